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

//! Minimal path set enumeration.
//!
//! Over a node universe the minimal path sets between `src` and `dst` are
//! exactly the node sets of the induced (chordless) `src`-`dst` paths. The
//! search below is a depth-first walk that refuses to step onto a node which
//! is adjacent to any path node other than the one it is leaving: such a step
//! would create a shortcut, so the resulting node set could not be minimal.

use crate::budget::{Budget, EngineError};
use crate::setfamily::{ElementSet, SetFamily};
use crate::topology::{PairError, Topology};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MpsError {
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Minimal path sets of one node pair.
#[derive(Clone, Debug)]
pub struct MpsResult {
    pub src: usize,
    pub dst: usize,
    /// Full node sequences from `src` to `dst`, in discovery order.
    pub paths: Vec<Vec<usize>>,
    /// One set per path with `src` and `dst` removed; in edge mode the
    /// traversed edges are included as well.
    pub interiors: SetFamily,
}

impl MpsResult {
    pub fn path_labels(&self, t: &Topology) -> Vec<Vec<String>> {
        self.paths
            .iter()
            .map(|p| p.iter().map(|&n| t.label(n).to_string()).collect())
            .collect()
    }
}

fn check_pair(t: &Topology, src: usize, dst: usize) -> Result<(), PairError> {
    for n in [src, dst] {
        if n >= t.num_nodes() {
            return Err(PairError::OutOfRange(n));
        }
    }
    if src == dst {
        return Err(PairError::SameEndpoints(t.label(src).to_string()));
    }
    Ok(())
}

pub fn find_mps(t: &Topology, src: usize, dst: usize, include_edges: bool) -> Result<MpsResult, PairError> {
    match find_mps_with_budget(t, src, dst, include_edges, &Budget::unlimited()) {
        Ok(r) => Ok(r),
        Err(MpsError::Pair(e)) => Err(e),
        Err(MpsError::Engine(_)) => unreachable!("unlimited budget"),
    }
}

/// Enumerates the minimal path sets between `src` and `dst`.
///
/// With `include_edges` every simple path is reported: once edges count as
/// elements, a path that skips a chord is no longer a superset of the path
/// that takes it, so the node-level pruning would drop genuine minimal path
/// sets.
pub fn find_mps_with_budget(
    t: &Topology,
    src: usize,
    dst: usize,
    include_edges: bool,
    budget: &Budget,
) -> Result<MpsResult, MpsError> {
    check_pair(t, src, dst)?;
    let n = t.num_nodes();
    let mut on_path = vec![false; n];
    // Number of path nodes adjacent to each node.
    let mut touching = vec![0u32; n];
    let mut path: Vec<usize> = Vec::with_capacity(n);
    // (node, position of the next neighbor to try)
    let mut stack: Vec<(usize, usize)> = Vec::with_capacity(n);
    let mut paths = Vec::new();

    let enter = |v: usize, path: &mut Vec<usize>, on_path: &mut [bool], touching: &mut [u32]| {
        path.push(v);
        on_path[v] = true;
        for &w in t.neighbors(v) {
            touching[w] += 1;
        }
    };
    let leave = |path: &mut Vec<usize>, on_path: &mut [bool], touching: &mut [u32]| {
        let v = path.pop().expect("non-empty path");
        on_path[v] = false;
        for &w in t.neighbors(v) {
            touching[w] -= 1;
        }
    };

    enter(src, &mut path, &mut on_path, &mut touching);
    stack.push((src, 0));
    while let Some(top) = stack.last_mut() {
        budget.tick()?;
        let (current, next) = *top;
        let nbrs = t.neighbors(current);
        if next >= nbrs.len() {
            stack.pop();
            leave(&mut path, &mut on_path, &mut touching);
            continue;
        }
        top.1 += 1;
        let w = nbrs[next];
        if on_path[w] {
            continue;
        }
        // `current` itself accounts for one touch.
        if !include_edges && touching[w] > 1 {
            continue;
        }
        if w == dst {
            let mut p = path.clone();
            p.push(w);
            paths.push(p);
            continue;
        }
        enter(w, &mut path, &mut on_path, &mut touching);
        stack.push((w, 0));
    }

    let sets: Vec<ElementSet> = paths.iter().map(|p| interior(t, p, include_edges)).collect();
    let interiors = SetFamily::from_sets(sets);
    debug_assert_eq!(interiors.len(), paths.len());
    debug_assert!(interiors.is_antichain());
    let interiors = interiors.into_minimal();
    Ok(MpsResult {
        src,
        dst,
        paths,
        interiors,
    })
}

/// Path nodes without the endpoints, plus the path's edges in edge mode.
pub fn interior(t: &Topology, path: &[usize], include_edges: bool) -> ElementSet {
    let mut s: ElementSet = path[1..path.len() - 1].iter().map(|&v| t.node_element(v)).collect();
    if include_edges {
        for w in path.windows(2) {
            let e = t.edge_index(w[0], w[1]).expect("consecutive path nodes are adjacent");
            s.insert(t.edge_element(e));
        }
    }
    s
}

/// Every simple `src`-`dst` path by plain DFS, reduced to its minimal
/// interiors. Exponential; meant for checking [`find_mps`] on small graphs.
pub fn mps_oracle(t: &Topology, src: usize, dst: usize) -> SetFamily {
    fn walk(t: &Topology, dst: usize, path: &mut Vec<usize>, on_path: &mut [bool], out: &mut Vec<ElementSet>) {
        let current = *path.last().unwrap();
        if current == dst {
            out.push(interior(t, path, false));
            return;
        }
        for &w in t.neighbors(current) {
            if on_path[w] {
                continue;
            }
            on_path[w] = true;
            path.push(w);
            walk(t, dst, path, on_path, out);
            path.pop();
            on_path[w] = false;
        }
    }
    let mut on_path = vec![false; t.num_nodes()];
    on_path[src] = true;
    let mut out = Vec::new();
    walk(t, dst, &mut vec![src], &mut on_path, &mut out);
    SetFamily::from_sets(out).into_minimal()
}
