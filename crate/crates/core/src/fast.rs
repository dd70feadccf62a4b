// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Minimal cut sets from minimal path sets via a binary decision tree.
//!
//! The path interiors are read as clauses of a monotone CNF: a failure set
//! disconnects the pair iff it hits every clause. The tree repeatedly pulls
//! out the most frequent element `x`, splitting the clauses into those
//! without `x` (left) and those with it, `x` removed (right). Once no element
//! repeats, the clauses are pairwise disjoint and their minimal hitting sets
//! are a plain product. Going back up, a node's hitting sets are
//!
//! ```text
//! HS(left) × ({{x}} ∪ HS(right))
//! ```
//!
//! since a failure set must hit every left clause, and either fail `x` itself
//! or hit every reduced right clause. Absorption runs at every product so the
//! intermediate families stay small.

use crate::budget::{Budget, EngineError};
use crate::setfamily::{cross_union, minimize_sets, ElementId, ElementSet, SetFamily};

/// Partitions `clauses` on `x`: `(without, with_reduced)`, where
/// `with_reduced` holds the clauses containing `x` with `x` taken out.
pub fn split(clauses: &SetFamily, x: ElementId) -> (SetFamily, SetFamily) {
    let mut without = Vec::new();
    let mut with_reduced = Vec::new();
    for c in clauses {
        if c.contains(x) {
            with_reduced.push(c.without(x));
        } else {
            without.push(c.clone());
        }
    }
    (SetFamily::from_sets(without), SetFamily::from_sets(with_reduced))
}

/// The element occurring in the most clauses, if it occurs in at least two.
/// Ties go to the smallest id.
pub fn pick_pivot(clauses: &SetFamily) -> Option<ElementId> {
    let bound = clauses.iter().map(ElementSet::bound).max().unwrap_or(0);
    let mut counts = vec![0u32; bound];
    for c in clauses {
        for e in c {
            counts[e.index()] += 1;
        }
    }
    let (best, &count) = counts
        .iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| a.cmp(b).then(j.cmp(i)))?;
    (count >= 2).then(|| ElementId::from(best))
}

/// Extends every partial hitting set in `acc` so it also hits `clause`.
/// Sets that already hit it are kept as they are.
pub fn multiply(acc: &SetFamily, clause: &ElementSet) -> SetFamily {
    let mut out = Vec::with_capacity(acc.len() * clause.len().max(1));
    for a in acc {
        if a.intersects(clause) {
            out.push(a.clone());
        } else {
            out.extend(clause.iter().map(|e| a.with(e)));
        }
    }
    minimize_sets(out)
}

/// Minimal hitting sets of a family of clauses: one element from each.
///
/// No clauses gives `{∅}`; an empty clause can never be hit, giving `{}`.
pub fn evaluate_leaf(clauses: &SetFamily) -> SetFamily {
    let mut acc = SetFamily::unit();
    for c in clauses.canonical() {
        acc = multiply(&acc, &c);
        if acc.is_empty() {
            break;
        }
    }
    acc
}

/// Joins the hitting sets of the two branches of a node split on `x`.
pub fn combine(left_hs: &SetFamily, right_hs: &SetFamily, x: ElementId) -> SetFamily {
    let mut alternatives: Vec<ElementSet> = right_hs.iter().cloned().collect();
    alternatives.push(ElementSet::singleton(x));
    cross_union(left_hs, &minimize_sets(alternatives))
}

/// All minimal cut sets, given the interiors of the minimal path sets.
///
/// `{∅}` (a direct edge) yields `{}`: nothing short of an endpoint can cut
/// the pair. `{}` (no path) yields `{∅}`: the pair is already cut.
pub fn fast_mcs(interiors: &SetFamily) -> SetFamily {
    hitting_sets(interiors, &Budget::unlimited()).expect("unlimited budget")
}

pub fn fast_mcs_with_budget(interiors: &SetFamily, budget: &Budget) -> Result<SetFamily, EngineError> {
    hitting_sets(interiors, budget)
}

fn hitting_sets(clauses: &SetFamily, budget: &Budget) -> Result<SetFamily, EngineError> {
    budget.tick()?;
    match pick_pivot(clauses) {
        None => Ok(evaluate_leaf(clauses)),
        Some(x) => {
            let (without, with_reduced) = split(clauses, x);
            let left = hitting_sets(&without, budget)?;
            if left.is_empty() {
                return Ok(left);
            }
            let right = hitting_sets(&with_reduced, budget)?;
            Ok(combine(&left, &right, x))
        }
    }
}

/// A materialized decision tree, mostly for inspection and testing;
/// [`fast_mcs`] evaluates the same recursion without building it.
#[derive(Clone, Debug)]
pub struct DecisionNode {
    pub clauses: SetFamily,
    pub pivot: Option<ElementId>,
    pub left: Option<Box<DecisionNode>>,
    pub right: Option<Box<DecisionNode>>,
    pub evaluation: Option<SetFamily>,
}

impl DecisionNode {
    pub fn build(clauses: SetFamily) -> DecisionNode {
        match pick_pivot(&clauses) {
            None => DecisionNode {
                clauses,
                pivot: None,
                left: None,
                right: None,
                evaluation: None,
            },
            Some(x) => {
                let (without, with_reduced) = split(&clauses, x);
                DecisionNode {
                    clauses,
                    pivot: Some(x),
                    left: Some(Box::new(DecisionNode::build(without))),
                    right: Some(Box::new(DecisionNode::build(with_reduced))),
                    evaluation: None,
                }
            }
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.pivot.is_none()
    }

    /// Fills `evaluation` bottom-up and returns this node's hitting sets.
    pub fn evaluate(&mut self) -> &SetFamily {
        let value = match (&mut self.left, &mut self.right, self.pivot) {
            (Some(l), Some(r), Some(x)) => {
                let left = l.evaluate().clone();
                let right = r.evaluate();
                combine(&left, right, x)
            }
            _ => evaluate_leaf(&self.clauses),
        };
        self.evaluation.insert(value)
    }

    pub fn depth(&self) -> usize {
        match (&self.left, &self.right) {
            (Some(l), Some(r)) => 1 + l.depth().max(r.depth()),
            _ => 0,
        }
    }

    /// Checks the structural invariants at every node: internal nodes carry a
    /// pivot shared by at least two clauses and exactly reassemble their
    /// clauses from their children; leaves hold pairwise disjoint clauses.
    pub fn check_structure(&self) -> Result<(), String> {
        match (&self.left, &self.right, self.pivot) {
            (Some(l), Some(r), Some(x)) => {
                let count = self.clauses.iter().filter(|c| c.contains(x)).count();
                if count < 2 {
                    return Err(format!("pivot {x:?} occurs in {count} clause(s)"));
                }
                let rebuilt =
                    SetFamily::from_sets(l.clauses.iter().cloned().chain(r.clauses.iter().map(|c| c.with(x))));
                if rebuilt != self.clauses {
                    return Err(format!("children of pivot {x:?} do not partition {:?}", self.clauses));
                }
                l.check_structure()?;
                r.check_structure()
            }
            (None, None, None) => {
                let sets = self.clauses.as_slice();
                for (i, a) in sets.iter().enumerate() {
                    for b in &sets[i + 1..] {
                        if a.intersects(b) {
                            return Err(format!("leaf clauses {a:?} and {b:?} overlap"));
                        }
                    }
                }
                Ok(())
            }
            _ => Err("pivot present without both children, or vice versa".into()),
        }
    }
}
