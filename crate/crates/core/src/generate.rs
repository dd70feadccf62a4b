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

//! Seeded random connected graphs for scaling experiments.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::topology::Topology;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GraphSpec {
    pub nodes: usize,
    pub p: f64,
    pub seed: u64,
}

impl GraphSpec {
    pub fn name(&self) -> String {
        format!("gen_n{}_p{}_s{}", self.nodes, self.p, self.seed)
    }
}

/// Parses `n=17,p=0.25,seed=7` (keys in any order, all required).
impl FromStr for GraphSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (mut n, mut p, mut seed) = (None, None, None);
        for part in s.split(',') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got `{part}`"))?;
            let bad = |_| format!("invalid value for `{k}`: `{v}`");
            match k.trim() {
                "n" => n = Some(v.trim().parse::<usize>().map_err(|e| bad(e.to_string()))?),
                "p" => p = Some(v.trim().parse::<f64>().map_err(|e| bad(e.to_string()))?),
                "seed" => seed = Some(v.trim().parse::<u64>().map_err(|e| bad(e.to_string()))?),
                other => return Err(format!("unknown generator key `{other}`")),
            }
        }
        let spec = GraphSpec {
            nodes: n.ok_or("missing `n`")?,
            p: p.ok_or("missing `p`")?,
            seed: seed.ok_or("missing `seed`")?,
        };
        if spec.nodes < 2 {
            return Err("`n` must be at least 2".into());
        }
        if !(0.0..=1.0).contains(&spec.p) {
            return Err("`p` must lie in [0, 1]".into());
        }
        Ok(spec)
    }
}

/// A random spanning tree (each node attaches to a uniformly chosen earlier
/// node of a shuffled order) overlaid with G(n, p). Always connected; labels
/// are zero-padded so label order equals numeric order.
pub fn random_connected(spec: &GraphSpec) -> Topology {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.nodes;
    let width = (n - 1).to_string().len();
    let labels: Vec<String> = (0..n).map(|i| format!("n{i:0width$}")).collect();

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        edges.push((order[i], parent));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(spec.p) {
                edges.push((u, v));
            }
        }
    }
    Topology::from_labeled_edges(
        spec.name(),
        labels.iter(),
        edges.iter().map(|&(u, v)| (&labels[u], &labels[v])),
    )
    .expect("generated labels and edges are valid")
}
