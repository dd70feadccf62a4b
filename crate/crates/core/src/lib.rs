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

//! Minimal path sets and minimal cut sets of node pairs in a network.
//!
//! The pipeline is: parse a [`Topology`], enumerate the minimal path sets of
//! a pair with [`find_mps`], then turn their interiors into minimal cut sets
//! with one of three engines:
//!
//! * [`fast_mcs`]: binary decision tree over the most frequent element;
//! * [`shannon_mcs`]: Boole-Shannon expansion of the success function;
//! * [`combinatorial_mcs`]: exhaustive search by increasing size.
//!
//! ```
//! use mcskit::{fast_mcs, find_mps, Topology};
//!
//! let t = Topology::parse_edge_list("S A\nS C\nA B\nA D\nC D\nD B\nD E\nE F\nB T\nF T", "sample").unwrap();
//! let (s, d) = t.resolve_pair("S", "T").unwrap();
//! let mps = find_mps(&t, s, d, false).unwrap();
//! let mcs = fast_mcs(&mps.interiors);
//! assert_eq!(
//!     t.family_to_json(&mcs),
//!     r#"[["A","C"],["A","D"],["B","D"],["B","E"],["B","F"]]"#
//! );
//! ```

pub mod baselines;
pub mod bench;
pub mod budget;
pub mod cli;
pub mod fast;
pub mod generate;
pub mod mps;
pub mod setfamily;
pub mod topology;

pub use baselines::{combinatorial_mcs, shannon_mcs, SopSuccess};
pub use bench::{run_bench, summarize, verify_pair, BenchConfig, BenchRecord, Method, PairVerdict};
pub use budget::{Budget, EngineError};
pub use fast::fast_mcs;
pub use mps::{find_mps, mps_oracle, MpsResult};
pub use setfamily::{cross_union, ElementId, ElementSet, SetFamily};
pub use topology::{Format, PairError, Topology, TopologyError};
