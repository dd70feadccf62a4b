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

//! Undirected network topologies and the reachability check that defines a
//! cut set.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Read;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::setfamily::ElementId;
use crate::setfamily::{ElementSet, SetFamily};

#[derive(Debug, Error)]
pub enum TopologyError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("edge references unknown node `{0}`")]
    UnknownNode(String),
    /// `line` is the source line for edge lists and the 1-based edge
    /// position for JSON input.
    #[error("self-loop on node `{label}` (entry {line}) is not allowed")]
    SelfLoop { label: String, line: usize },
    #[error("duplicate node label `{0}`")]
    DuplicateNode(String),
    #[error("invalid node label {0:?}: labels must be non-empty and free of whitespace and `#`")]
    InvalidLabel(String),
    #[error("topology has no nodes")]
    Empty,
    #[error("topology input is not valid UTF-8")]
    Utf8,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PairError {
    #[error("source and destination are the same node `{0}`")]
    SameEndpoints(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("node index {0} is out of range")]
    OutOfRange(usize),
    #[error("endpoint `{0}` is part of the removed set")]
    EndpointRemoved(String),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Json,
}

impl Format {
    /// Guesses from a file extension; anything but `.json` is an edge list.
    pub fn from_path(path: &std::path::Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::EdgeList,
        }
    }
}

/// What an [`ElementId`] refers to.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Node(usize),
    Edge(usize),
}

/// An immutable, simple, undirected graph with labelled nodes.
///
/// Nodes are indexed `0..n` in label sort order and edges `0..m` in sorted
/// endpoint order, so every traversal and every output is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Topology {
    name: String,
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonTopology {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nodes: Option<Vec<String>>,
    edges: Vec<(String, String)>,
}

fn valid_label(label: &str) -> bool {
    !label.is_empty() && !label.contains(|c: char| c.is_whitespace() || c == '#')
}

impl Topology {
    /// Builds a topology from labels and label pairs. Parallel edges are
    /// collapsed; self-loops and unknown endpoints are rejected.
    pub fn from_labeled_edges<S: AsRef<str>>(
        name: impl Into<String>,
        nodes: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Topology, TopologyError> {
        let mut labels = Vec::new();
        let mut seen = BTreeSet::new();
        for n in nodes {
            let n = n.as_ref();
            if !valid_label(n) {
                return Err(TopologyError::InvalidLabel(n.to_string()));
            }
            if !seen.insert(n.to_string()) {
                return Err(TopologyError::DuplicateNode(n.to_string()));
            }
            labels.push(n.to_string());
        }
        labels.sort();
        if labels.is_empty() {
            return Err(TopologyError::Empty);
        }
        let lookup = |l: &str| {
            labels
                .binary_search_by(|x| x.as_str().cmp(l))
                .map_err(|_| TopologyError::UnknownNode(l.to_string()))
        };
        let mut pairs = BTreeSet::new();
        for (i, (a, b)) in edges.into_iter().enumerate() {
            let (a, b) = (a.as_ref(), b.as_ref());
            let (u, v) = (lookup(a)?, lookup(b)?);
            if u == v {
                return Err(TopologyError::SelfLoop {
                    label: a.to_string(),
                    line: i + 1,
                });
            }
            pairs.insert((u.min(v), u.max(v)));
        }
        Ok(Topology::from_indexed(name.into(), labels, pairs.into_iter().collect()))
    }

    /// `labels` must be sorted and unique, `edges` sorted with `u < v`.
    fn from_indexed(name: String, labels: Vec<String>, edges: Vec<(usize, usize)>) -> Topology {
        let mut adjacency = vec![Vec::new(); labels.len()];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for n in &mut adjacency {
            n.sort_unstable();
        }
        Topology {
            name,
            labels,
            edges,
            adjacency,
        }
    }

    pub fn parse(input: impl Read, format: Format, name: impl Into<String>) -> Result<Topology, TopologyError> {
        let mut input = input;
        let mut bytes = Vec::new();
        input.read_to_end(&mut bytes)?;
        let text = String::from_utf8(bytes).map_err(|_| TopologyError::Utf8)?;
        match format {
            Format::EdgeList => Topology::parse_edge_list(&text, name),
            Format::Json => Topology::parse_json(&text, name),
        }
    }

    pub fn from_path(path: &std::path::Path) -> Result<Topology, TopologyError> {
        let name = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("topology")
            .to_string();
        let file = std::fs::File::open(path)?;
        Topology::parse(file, Format::from_path(path), name)
    }

    /// One edge per line, `#` comments, blank lines ignored. Nodes are the
    /// endpoints that appear.
    pub fn parse_edge_list(text: &str, name: impl Into<String>) -> Result<Topology, TopologyError> {
        let mut nodes = BTreeSet::new();
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let tokens: Vec<(usize, &str)> = tokens_with_columns(line);
            match tokens.as_slice() {
                [] => continue,
                [(_, a), (_, b)] => {
                    if a == b {
                        return Err(TopologyError::SelfLoop {
                            label: a.to_string(),
                            line: lineno + 1,
                        });
                    }
                    nodes.insert(a.to_string());
                    nodes.insert(b.to_string());
                    edges.push((a.to_string(), b.to_string()));
                }
                [(col, tok)] => {
                    return Err(TopologyError::Syntax {
                        line: lineno + 1,
                        column: col + tok.chars().count(),
                        message: "expected two node labels".into(),
                    })
                }
                [_, _, (col, _), ..] => {
                    return Err(TopologyError::Syntax {
                        line: lineno + 1,
                        column: *col,
                        message: "unexpected third token; expected `<label> <label>`".into(),
                    })
                }
            }
        }
        Topology::from_labeled_edges(name, nodes.iter(), edges.iter().map(|(a, b)| (a, b)))
    }

    /// `{"nodes": [...], "edges": [[a, b], ...]}`; `nodes` may be omitted and
    /// `name`, when present, overrides the supplied name.
    pub fn parse_json(text: &str, name: impl Into<String>) -> Result<Topology, TopologyError> {
        let parsed: JsonTopology = serde_json::from_str(text).map_err(|e| TopologyError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let name = parsed.name.unwrap_or_else(|| name.into());
        let nodes: Vec<String> = match parsed.nodes {
            Some(nodes) => nodes,
            None => parsed
                .edges
                .iter()
                .flat_map(|(a, b)| [a.clone(), b.clone()])
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        };
        Topology::from_labeled_edges(name, nodes.iter(), parsed.edges.iter().map(|(a, b)| (a, b)))
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{} {}", self.labels[u], self.labels[v]);
        }
        out
    }

    pub fn to_json(&self) -> String {
        let doc = JsonTopology {
            name: Some(self.name.clone()),
            nodes: Some(self.labels.clone()),
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| (self.labels[u].clone(), self.labels[v].clone()))
                .collect(),
        };
        serde_json::to_string(&doc).expect("topology serializes")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_nodes(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn node_index(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    /// Neighbors of `node` in ascending index order.
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn node_element(&self, node: usize) -> ElementId {
        ElementId::from(node)
    }

    pub fn edge_element(&self, edge: usize) -> ElementId {
        ElementId::from(self.labels.len() + edge)
    }

    pub fn element(&self, id: ElementId) -> Element {
        let n = self.labels.len();
        if id.index() < n {
            Element::Node(id.index())
        } else {
            Element::Edge(id.index() - n)
        }
    }

    /// Node label, or `a-b` for an edge.
    pub fn element_label(&self, id: ElementId) -> String {
        match self.element(id) {
            Element::Node(n) => self.labels[n].clone(),
            Element::Edge(e) => {
                let (u, v) = self.edges[e];
                format!("{}-{}", self.labels[u], self.labels[v])
            }
        }
    }

    /// All candidate cut elements for a pair: every node except the
    /// endpoints, plus every edge when `include_edges` is set.
    pub fn pair_universe(&self, src: usize, dst: usize, include_edges: bool) -> ElementSet {
        let mut u: ElementSet = (0..self.num_nodes())
            .filter(|&n| n != src && n != dst)
            .map(ElementId::from)
            .collect();
        if include_edges {
            for e in 0..self.num_edges() {
                u.insert(self.edge_element(e));
            }
        }
        u
    }

    /// Resolves a pair of labels, rejecting unknown labels and `src == dst`.
    pub fn resolve_pair(&self, src: &str, dst: &str) -> Result<(usize, usize), PairError> {
        let s = self
            .node_index(src)
            .ok_or_else(|| PairError::UnknownNode(src.to_string()))?;
        let d = self
            .node_index(dst)
            .ok_or_else(|| PairError::UnknownNode(dst.to_string()))?;
        if s == d {
            return Err(PairError::SameEndpoints(src.to_string()));
        }
        Ok((s, d))
    }

    /// Whether `dst` is still reachable from `src` once every node and edge in
    /// `removed` has failed.
    pub fn is_connected_after_removal(&self, removed: &ElementSet, src: usize, dst: usize) -> Result<bool, PairError> {
        for ep in [src, dst] {
            if ep >= self.num_nodes() {
                return Err(PairError::OutOfRange(ep));
            }
            if removed.contains(self.node_element(ep)) {
                return Err(PairError::EndpointRemoved(self.labels[ep].clone()));
            }
        }
        let has_edges = removed.bound() > self.num_nodes();
        let mut seen = vec![false; self.num_nodes()];
        let mut stack = vec![src];
        seen[src] = true;
        while let Some(u) = stack.pop() {
            if u == dst {
                return Ok(true);
            }
            for &v in &self.adjacency[u] {
                if seen[v] || removed.contains(ElementId::from(v)) {
                    continue;
                }
                if has_edges {
                    let e = self.edge_index(u, v).expect("adjacent nodes share an edge");
                    if removed.contains(self.edge_element(e)) {
                        continue;
                    }
                }
                seen[v] = true;
                stack.push(v);
            }
        }
        Ok(false)
    }

    pub fn family_labels(&self, family: &SetFamily) -> Vec<Vec<String>> {
        family
            .canonical()
            .iter()
            .map(|s| s.iter().map(|e| self.element_label(e)).collect())
            .collect()
    }

    /// JSON array of label arrays in canonical order.
    pub fn family_to_json(&self, family: &SetFamily) -> String {
        serde_json::to_string(&self.family_labels(family)).expect("labels serialize")
    }
}

/// Whitespace-separated tokens with their 1-based starting column.
fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (byte, c)) in line.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((col + 1, byte)),
            (true, Some((scol, sbyte))) => {
                out.push((scol, &line[sbyte..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((scol, sbyte)) = start {
        out.push((scol, &line[sbyte..]));
    }
    out
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub const SAMPLE: &str = "S A\nS C\nA B\nA D\nC D\nD B\nD E\nE F\nB T\nF T\n";

    pub fn sample() -> Topology {
        Topology::parse_edge_list(SAMPLE, "sample").unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use proptest::prelude::*;

    fn nodes(t: &Topology, labels: &str) -> ElementSet {
        labels
            .split_whitespace()
            .map(|l| t.node_element(t.node_index(l).unwrap()))
            .collect()
    }

    #[test]
    fn parse_sample() {
        let t = sample();
        assert_eq!(t.num_nodes(), 8);
        assert_eq!(t.num_edges(), 10);
        assert_eq!(t.labels(), ["A", "B", "C", "D", "E", "F", "S", "T"]);
        let d = t.node_index("D").unwrap();
        let labels: Vec<&str> = t.neighbors(d).iter().map(|&n| t.label(n)).collect();
        assert_eq!(labels, ["A", "B", "C", "E"]);
    }

    #[test]
    fn parse_minimal_and_json_duplicates() {
        let t = Topology::parse_edge_list("A B", "ab").unwrap();
        assert_eq!((t.num_nodes(), t.num_edges()), (2, 1));

        let json = r#"{"nodes":["A","B","C"],"edges":[["A","B"],["B","C"],["A","B"]]}"#;
        let t = Topology::parse_json(json, "j").unwrap();
        assert_eq!((t.num_nodes(), t.num_edges()), (3, 2));

        let t = Topology::parse_json(r#"{"edges":[["X","Y"],["Y","X"]]}"#, "j").unwrap();
        assert_eq!((t.num_nodes(), t.num_edges()), (2, 1));
    }

    #[test]
    fn comments_and_blank_lines() {
        let t = Topology::parse_edge_list("# header\n\nA B # trailing\n  \nB C\n", "c").unwrap();
        assert_eq!(t.num_edges(), 2);
    }

    #[test]
    fn parse_errors() {
        match Topology::parse_edge_list("A B\nA B C\n", "x") {
            Err(TopologyError::Syntax { line: 2, column: 5, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Topology::parse_edge_list("A B\nlonely\n", "x"),
            Err(TopologyError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            Topology::parse_edge_list("A A\n", "x"),
            Err(TopologyError::SelfLoop { line: 1, .. })
        ));
        assert!(matches!(
            Topology::parse_edge_list("# nothing\n", "x"),
            Err(TopologyError::Empty)
        ));
        assert!(matches!(
            Topology::parse_json(r#"{"nodes":["A"],"edges":[["A","B"]]}"#, "x"),
            Err(TopologyError::UnknownNode(l)) if l == "B"
        ));
        assert!(matches!(
            Topology::parse_json(r#"{"nodes":["A","A"],"edges":[]}"#, "x"),
            Err(TopologyError::DuplicateNode(_))
        ));
        assert!(matches!(
            Topology::parse_json(r#"{"edges":[["A","A"]]}"#, "x"),
            Err(TopologyError::SelfLoop { .. })
        ));
        assert!(matches!(
            Topology::parse_json("{\"edges\": [[\"A\"", "x"),
            Err(TopologyError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            Topology::parse(&[0xff, 0xfe][..], Format::EdgeList, "x"),
            Err(TopologyError::Utf8)
        ));
    }

    #[test]
    fn reachability_examples() {
        let t = sample();
        let (s, d) = t.resolve_pair("S", "T").unwrap();
        assert!(!t.is_connected_after_removal(&nodes(&t, "A D"), s, d).unwrap());
        assert!(t.is_connected_after_removal(&ElementSet::new(), s, d).unwrap());
        // S-A-D-E-F-T survives
        assert!(t.is_connected_after_removal(&nodes(&t, "B C"), s, d).unwrap());
        assert_eq!(
            t.is_connected_after_removal(&nodes(&t, "S"), s, d),
            Err(PairError::EndpointRemoved("S".into()))
        );
    }

    #[test]
    fn edge_removal() {
        let t = Topology::parse_edge_list("A B\nB C\nA C\n", "tri").unwrap();
        let (a, c) = t.resolve_pair("A", "C").unwrap();
        let ac = t.edge_element(t.edge_index(a, c).unwrap());
        let ab = t.edge_element(t.edge_index(a, 1).unwrap());
        assert!(t.is_connected_after_removal(&ElementSet::singleton(ac), a, c).unwrap());
        let both: ElementSet = [ac, ab].into_iter().collect();
        assert!(!t.is_connected_after_removal(&both, a, c).unwrap());
        assert_eq!(t.element_label(ac), "A-C");
    }

    #[test]
    fn resolve_pair_errors() {
        let t = sample();
        assert_eq!(t.resolve_pair("S", "S"), Err(PairError::SameEndpoints("S".into())));
        assert_eq!(t.resolve_pair("S", "Q"), Err(PairError::UnknownNode("Q".into())));
    }

    fn arb_topology() -> impl Strategy<Value = Topology> {
        (2usize..9)
            .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 1..20)))
            .prop_filter_map("needs an edge", |(n, pairs)| {
                let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
                let edges: Vec<(String, String)> = pairs
                    .into_iter()
                    .filter(|(a, b)| a != b)
                    .map(|(a, b)| (labels[a].clone(), labels[b].clone()))
                    .collect();
                if edges.is_empty() {
                    return None;
                }
                Topology::from_labeled_edges("p", labels.iter(), edges.iter().map(|(a, b)| (a, b))).ok()
            })
    }

    proptest! {
        #[test]
        fn json_round_trip(t in arb_topology()) {
            let back = Topology::parse_json(&t.to_json(), "other").unwrap();
            prop_assert_eq!(back, t);
        }

        #[test]
        fn adjacency_symmetric(t in arb_topology()) {
            for u in 0..t.num_nodes() {
                for &v in t.neighbors(u) {
                    prop_assert!(t.is_adjacent(v, u));
                }
            }
        }

        #[test]
        fn removal_is_monotone(t in arb_topology(), mask in 0u32..512, extra in 0u32..512) {
            let n = t.num_nodes();
            let (s, d) = (0, n - 1);
            let pick = |m: u32| -> ElementSet {
                (1..n - 1).filter(|i| m & (1 << i) != 0).map(ElementId::from).collect()
            };
            let r = pick(mask);
            let bigger = r.union(&pick(extra));
            if !t.is_connected_after_removal(&r, s, d).unwrap() {
                prop_assert!(!t.is_connected_after_removal(&bigger, s, d).unwrap());
            }
        }
    }

    #[test]
    fn edge_list_round_trip() {
        let t = sample();
        assert_eq!(Topology::parse_edge_list(&t.to_edge_list(), "sample").unwrap(), t);
    }
}
