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

//! Reference engines for minimal cut sets: an exhaustive size-by-size
//! search and a Boole-Shannon expansion of the success function.

use crate::budget::{Budget, EngineError};
use crate::fast::{evaluate_leaf, pick_pivot};
use crate::setfamily::{minimize_sets, ElementId, ElementSet, SetFamily};

/// Largest universe the exhaustive search handles (subsets are `u128` masks).
pub const MAX_COMBINATORIAL_UNIVERSE: usize = 127;

/// Tests every candidate failure set in order of increasing size.
///
/// Each path interior is a row of a 0/1 table and each candidate set a
/// column; a column that is all ones (the candidate meets every path) is a
/// cut set. Candidates containing an already found cut set are skipped, so
/// every cut set found is minimal. The search stops once a whole size level
/// consists of skipped candidates, since every larger candidate would be
/// skipped as well.
///
/// Elements of `interiors` that are missing from `universe` can never fail.
pub fn combinatorial_mcs(
    interiors: &SetFamily,
    universe: &ElementSet,
    budget: &Budget,
) -> Result<SetFamily, EngineError> {
    let elements: Vec<ElementId> = universe.iter().collect();
    let m = elements.len();
    if m > MAX_COMBINATORIAL_UNIVERSE {
        return Err(EngineError::UniverseTooLarge(m));
    }
    if interiors.contains_empty_set() {
        return Ok(SetFamily::empty());
    }
    let to_mask = |s: &ElementSet| -> u128 {
        elements
            .iter()
            .enumerate()
            .filter(|(_, e)| s.contains(**e))
            .fold(0u128, |acc, (i, _)| acc | 1 << i)
    };
    let rows: Vec<u128> = interiors.iter().map(to_mask).collect();
    let mut found: Vec<u128> = Vec::new();

    for k in 0..=m {
        let mut any_candidate = false;
        for column in KSubsets::new(m, k) {
            budget.tick()?;
            if found.iter().any(|&f| f & !column == 0) {
                continue;
            }
            any_candidate = true;
            if rows.iter().all(|&r| column & r != 0) {
                found.push(column);
            }
        }
        if !any_candidate {
            break;
        }
    }

    let sets = found.into_iter().map(|mask| {
        elements
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, e)| *e)
            .collect::<ElementSet>()
    });
    Ok(SetFamily::from_sets(sets).into_minimal())
}

/// All `k`-bit masks below `1 << m` in increasing order (Gosper's hack).
struct KSubsets {
    next: Option<u128>,
    limit_bit: usize,
}

impl KSubsets {
    fn new(m: usize, k: usize) -> Self {
        debug_assert!(m <= MAX_COMBINATORIAL_UNIVERSE);
        let next = if k > m {
            None
        } else if k == 0 {
            Some(0)
        } else {
            Some((1u128 << k) - 1)
        };
        KSubsets { next, limit_bit: m }
    }
}

impl Iterator for KSubsets {
    type Item = u128;

    fn next(&mut self) -> Option<u128> {
        let x = self.next?;
        self.next = if x == 0 {
            None
        } else {
            let c = x & x.wrapping_neg();
            let r = x + c;
            let n = (((r ^ x) >> 2) / c) | r;
            (n >> self.limit_bit == 0).then_some(n)
        };
        Some(x)
    }
}

/// A monotone sum of products: each term is a path interior and the pair is
/// connected iff every element of some term works.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SopSuccess {
    terms: SetFamily,
}

impl SopSuccess {
    pub fn new(terms: SetFamily) -> Self {
        SopSuccess {
            terms: terms.into_minimal(),
        }
    }

    pub fn terms(&self) -> &SetFamily {
        &self.terms
    }
}

/// One expansion `S = x·S[x=1] + x̄·S[x=0]`, reported to observers of
/// [`shannon_mcs_observed`].
#[derive(Debug)]
pub struct ExpansionStep<'a> {
    pub depth: usize,
    pub pivot: ElementId,
    /// `S[x=1]`
    pub positive: &'a SetFamily,
    /// `S[x=0]`
    pub negative: &'a SetFamily,
}

/// Cofactors of `terms` on `x`: `(S[x=1], S[x=0])`.
///
/// Setting `x = 1` drops it from the terms that contain it and keeps the
/// others; setting `x = 0` kills the terms that contain it.
pub fn shannon_split(terms: &SetFamily, x: ElementId) -> (SetFamily, SetFamily) {
    let mut positive = Vec::with_capacity(terms.len());
    let mut negative = Vec::new();
    for t in terms {
        if t.contains(x) {
            positive.push(t.without(x));
        } else {
            positive.push(t.clone());
            negative.push(t.clone());
        }
    }
    (minimize_sets(positive), SetFamily::from_sets(negative))
}

pub fn shannon_mcs(s: &SopSuccess) -> SetFamily {
    shannon_mcs_with_budget(s, &Budget::unlimited()).expect("unlimited budget")
}

pub fn shannon_mcs_with_budget(s: &SopSuccess, budget: &Budget) -> Result<SetFamily, EngineError> {
    shannon_mcs_observed(s, budget, &mut |_| {})
}

/// Complements `s` by recursive expansion about its most frequent variable.
///
/// For a monotone function the complement of `x·S1 + x̄·S0` has prime
/// implicants `min(MCS(S1) ∪ x·MCS(S0))`. Once no variable repeats, the
/// terms are disjoint and De Morgan gives the product directly.
pub fn shannon_mcs_observed(
    s: &SopSuccess,
    budget: &Budget,
    observer: &mut dyn FnMut(&ExpansionStep<'_>),
) -> Result<SetFamily, EngineError> {
    complement(&s.terms, 0, budget, observer)
}

fn complement(
    terms: &SetFamily,
    depth: usize,
    budget: &Budget,
    observer: &mut dyn FnMut(&ExpansionStep<'_>),
) -> Result<SetFamily, EngineError> {
    budget.tick()?;
    if terms.contains_empty_set() {
        // S ≡ 1
        return Ok(SetFamily::empty());
    }
    let Some(x) = pick_pivot(terms) else {
        return Ok(evaluate_leaf(terms));
    };
    let (positive, negative) = shannon_split(terms, x);
    observer(&ExpansionStep {
        depth,
        pivot: x,
        positive: &positive,
        negative: &negative,
    });
    let cuts_positive = complement(&positive, depth + 1, budget, observer)?;
    let cuts_negative = complement(&negative, depth + 1, budget, observer)?;
    let mut all: Vec<ElementSet> = cuts_positive.into_canonical();
    all.extend(cuts_negative.iter().map(|c| c.with(x)));
    Ok(minimize_sets(all))
}
