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

//! Benchmark harness: for every node pair of every topology, time the path
//! set phase once and each requested cut set engine on top of it, and check
//! that the engines agree.

use std::fmt;
use std::io;
use std::str::FromStr;
use std::time::{Duration, Instant};

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::baselines::{combinatorial_mcs, shannon_mcs_with_budget, SopSuccess};
use crate::budget::{Budget, EngineError};
use crate::fast::fast_mcs_with_budget;
use crate::mps::{find_mps, find_mps_with_budget, MpsError};
use crate::setfamily::{ElementSet, SetFamily};
use crate::topology::{PairError, Topology};

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "FAST_MCS_THREADS";

/// Above this many candidate elements [`verify_pair`] skips the completeness
/// check and reports [`PairVerdict::Partial`].
pub const VERIFY_COMPLETENESS_LIMIT: usize = 20;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Fast,
    Shannon,
    Combinatorial,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Fast, Method::Shannon, Method::Combinatorial];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Fast => "fast",
            Method::Shannon => "shannon",
            Method::Combinatorial => "combinatorial",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown method `{s}` (expected fast, shannon or combinatorial)"))
    }
}

/// Runs one engine on the interiors of a pair. `universe` is only consulted
/// by the combinatorial engine.
pub fn compute_mcs(
    method: Method,
    interiors: &SetFamily,
    universe: &ElementSet,
    budget: &Budget,
) -> Result<SetFamily, EngineError> {
    match method {
        Method::Fast => fast_mcs_with_budget(interiors, budget),
        Method::Shannon => shannon_mcs_with_budget(&SopSuccess::new(interiors.clone()), budget),
        Method::Combinatorial => combinatorial_mcs(interiors, universe, budget),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Timeout,
    Error,
}

/// One (topology, pair, method) measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub topology: String,
    pub num_nodes: usize,
    pub num_edges: usize,
    pub src: String,
    pub dst: String,
    pub method: Method,
    pub status: Status,
    /// Shared by every method of the same pair.
    pub mps_time: Duration,
    /// The full timeout on [`Status::Timeout`].
    pub mcs_time: Duration,
    pub num_mps: usize,
    pub num_mcs: Option<usize>,
    /// False only when this engine finished with a family different from the
    /// reference engine's.
    pub agreement: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairSelection {
    All,
    Explicit(Vec<(String, String)>),
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub methods: Vec<Method>,
    pub pairs: PairSelection,
    pub timeout: Duration,
    pub repetitions: usize,
    pub threads: usize,
    pub include_edges: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            methods: vec![Method::Fast],
            pairs: PairSelection::All,
            timeout: Duration::from_secs(30),
            repetitions: 3,
            threads: threads_from_env(),
            include_edges: false,
        }
    }
}

/// `FAST_MCS_THREADS` when set to a positive integer, otherwise the
/// available parallelism.
pub fn threads_from_env() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("no methods selected")]
    NoMethods,
    #[error("timeout must be positive")]
    ZeroTimeout,
    #[error("repetitions must be positive")]
    ZeroRepetitions,
    #[error("topology `{topology}`: {source}")]
    Pair {
        topology: String,
        #[source]
        source: PairError,
    },
    #[error("could not start worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn median(mut samples: Vec<Duration>) -> Duration {
    samples.sort_unstable();
    samples[samples.len() / 2]
}

fn pairs_for(t: &Topology, selection: &PairSelection) -> Result<Vec<(usize, usize)>, BenchError> {
    match selection {
        PairSelection::All => {
            let n = t.num_nodes();
            Ok((0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect())
        }
        PairSelection::Explicit(list) => {
            let mut out = Vec::with_capacity(list.len());
            for (a, b) in list {
                let (u, v) = t.resolve_pair(a, b).map_err(|source| BenchError::Pair {
                    topology: t.name().to_string(),
                    source,
                })?;
                out.push((u.min(v), u.max(v)));
            }
            out.sort_unstable();
            out.dedup();
            Ok(out)
        }
    }
}

/// Runs every selected pair of every topology. Records come out ordered by
/// topology, then pair, then method, whatever the number of workers.
pub fn run_bench(topologies: &[Topology], config: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    if config.methods.is_empty() {
        return Err(BenchError::NoMethods);
    }
    if config.timeout.is_zero() {
        return Err(BenchError::ZeroTimeout);
    }
    if config.repetitions == 0 {
        return Err(BenchError::ZeroRepetitions);
    }
    let mut methods = config.methods.clone();
    methods.sort_unstable();
    methods.dedup();

    let mut jobs = Vec::new();
    for t in topologies {
        for (u, v) in pairs_for(t, &config.pairs)? {
            jobs.push((t, u, v));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads.max(1))
        .build()
        .map_err(|e| BenchError::Pool(e.to_string()))?;
    let per_pair: Vec<Vec<BenchRecord>> = pool.install(|| {
        jobs.par_iter()
            .map(|&(t, u, v)| bench_pair(t, u, v, &methods, config))
            .collect()
    });
    Ok(per_pair.into_iter().flatten().collect())
}

struct Outcome {
    status: Status,
    time: Duration,
    family: Option<SetFamily>,
}

fn run_timed<T, E>(
    config: &BenchConfig,
    mut f: impl FnMut(&Budget) -> Result<T, E>,
    interrupted: impl Fn(&E) -> bool,
) -> Result<(T, Duration), (Status, Duration)> {
    let mut samples = Vec::with_capacity(config.repetitions);
    let mut last = None;
    for _ in 0..config.repetitions {
        let budget = Budget::with_timeout(config.timeout);
        let start = Instant::now();
        let result = f(&budget);
        let elapsed = start.elapsed();
        match result {
            Ok(v) => {
                samples.push(elapsed);
                last = Some(v);
            }
            Err(e) if interrupted(&e) => return Err((Status::Timeout, config.timeout)),
            Err(_) => return Err((Status::Error, elapsed)),
        }
    }
    Ok((last.expect("at least one repetition"), median(samples)))
}

fn bench_pair(t: &Topology, src: usize, dst: usize, methods: &[Method], config: &BenchConfig) -> Vec<BenchRecord> {
    let record = |method, status, mps_time, mcs_time, num_mps, num_mcs| BenchRecord {
        topology: t.name().to_string(),
        num_nodes: t.num_nodes(),
        num_edges: t.num_edges(),
        src: t.label(src).to_string(),
        dst: t.label(dst).to_string(),
        method,
        status,
        mps_time,
        mcs_time,
        num_mps,
        num_mcs,
        agreement: true,
    };

    let mps = run_timed(
        config,
        |b| find_mps_with_budget(t, src, dst, config.include_edges, b),
        |e| matches!(e, MpsError::Engine(EngineError::Interrupted)),
    );
    let (mps, mps_time) = match mps {
        Ok(v) => v,
        Err((status, time)) => {
            // Without path sets no engine can run; charge the full cost to each.
            return methods
                .iter()
                .map(|&m| record(m, status, time, time, 0, None))
                .collect();
        }
    };
    let universe = t.pair_universe(src, dst, config.include_edges);

    let outcomes: Vec<Outcome> = methods
        .iter()
        .map(|&m| {
            match run_timed(
                config,
                |b| compute_mcs(m, &mps.interiors, &universe, b),
                |e| *e == EngineError::Interrupted,
            ) {
                Ok((family, time)) => Outcome {
                    status: Status::Ok,
                    time,
                    family: Some(family),
                },
                Err((status, time)) => Outcome {
                    status,
                    time,
                    family: None,
                },
            }
        })
        .collect();

    // Reference: the fast engine if it finished, else the first that did.
    let reference = methods
        .iter()
        .position(|&m| m == Method::Fast)
        .filter(|&i| outcomes[i].family.is_some())
        .or_else(|| outcomes.iter().position(|o| o.family.is_some()));

    let mut records: Vec<BenchRecord> = methods
        .iter()
        .zip(&outcomes)
        .map(|(&m, o)| {
            let mut r = record(
                m,
                o.status,
                mps_time,
                o.time,
                mps.paths.len(),
                o.family.as_ref().map(SetFamily::len),
            );
            if let (Some(ri), Some(f)) = (reference, &o.family) {
                r.agreement = outcomes[ri].family.as_ref() == Some(f);
            }
            r
        })
        .collect();
    if let Some(ri) = reference {
        let all = records.iter().all(|r| r.agreement);
        records[ri].agreement = all;
    }
    records
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodSummary {
    pub total_mps_time_ns: u64,
    /// Sum over `ok` records only.
    pub total_mcs_time_ns: u64,
    pub pairs: usize,
    pub timeouts: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologySummary {
    pub agreement: bool,
    pub methods: IndexMap<Method, MethodSummary>,
}

/// Per-topology, per-method totals in first-appearance order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BenchSummary {
    pub topologies: IndexMap<String, TopologySummary>,
}

fn nanos(d: Duration) -> u64 {
    u64::try_from(d.as_nanos()).unwrap_or(u64::MAX)
}

pub fn summarize(records: &[BenchRecord]) -> BenchSummary {
    let mut summary = BenchSummary::default();
    for r in records {
        let topo = summary
            .topologies
            .entry(r.topology.clone())
            .or_insert_with(|| TopologySummary {
                agreement: true,
                methods: IndexMap::new(),
            });
        topo.agreement &= r.agreement;
        let m = topo.methods.entry(r.method).or_default();
        m.pairs += 1;
        m.total_mps_time_ns += nanos(r.mps_time);
        match r.status {
            Status::Ok => m.total_mcs_time_ns += nanos(r.mcs_time),
            Status::Timeout => m.timeouts += 1,
            Status::Error => m.errors += 1,
        }
    }
    summary
}

impl BenchSummary {
    pub fn all_agree(&self) -> bool {
        self.topologies.values().all(|t| t.agreement)
    }

    pub fn timeouts(&self) -> usize {
        self.topologies
            .values()
            .flat_map(|t| t.methods.values())
            .map(|m| m.timeouts)
            .sum()
    }
}

pub const CSV_HEADER: &str =
    "topology,num_nodes,num_edges,src,dst,method,status,mps_time_ns,mcs_time_ns,num_mps,num_mcs,agreement";

pub const PLOT_HEADER: &str = "topology,method,total_mps_time_ns,total_mcs_time_ns";

#[derive(Serialize, Deserialize)]
struct CsvRow {
    topology: String,
    num_nodes: usize,
    num_edges: usize,
    src: String,
    dst: String,
    method: Method,
    status: Status,
    mps_time_ns: u64,
    mcs_time_ns: u64,
    num_mps: usize,
    num_mcs: Option<usize>,
    agreement: bool,
}

pub fn write_records_csv<W: io::Write>(records: &[BenchRecord], out: W) -> Result<(), BenchError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in records {
        w.serialize(CsvRow {
            topology: r.topology.clone(),
            num_nodes: r.num_nodes,
            num_edges: r.num_edges,
            src: r.src.clone(),
            dst: r.dst.clone(),
            method: r.method,
            status: r.status,
            mps_time_ns: nanos(r.mps_time),
            mcs_time_ns: nanos(r.mcs_time),
            num_mps: r.num_mps,
            num_mcs: r.num_mcs,
            agreement: r.agreement,
        })?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records_csv<R: io::Read>(input: R) -> Result<Vec<BenchRecord>, BenchError> {
    let mut rdr = csv::Reader::from_reader(input);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header.join(",") != CSV_HEADER {
        return Err(BenchError::Io(io::Error::new(
            io::ErrorKind::InvalidData,
            format!("unexpected header `{}`", header.join(",")),
        )));
    }
    rdr.deserialize::<CsvRow>()
        .map(|row| {
            let row = row?;
            Ok(BenchRecord {
                topology: row.topology,
                num_nodes: row.num_nodes,
                num_edges: row.num_edges,
                src: row.src,
                dst: row.dst,
                method: row.method,
                status: row.status,
                mps_time: Duration::from_nanos(row.mps_time_ns),
                mcs_time: Duration::from_nanos(row.mcs_time_ns),
                num_mps: row.num_mps,
                num_mcs: row.num_mcs,
                agreement: row.agreement,
            })
        })
        .collect()
}

pub fn write_plot_csv<W: io::Write>(summary: &BenchSummary, out: W) -> Result<(), BenchError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(PLOT_HEADER.split(','))?;
    for (topology, t) in &summary.topologies {
        for (method, m) in &t.methods {
            w.write_record([
                topology.as_str(),
                method.as_str(),
                &m.total_mps_time_ns.to_string(),
                &m.total_mcs_time_ns.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Outcome of checking a claimed cut set family against the definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairVerdict {
    /// Every member is a minimal cut and none is missing.
    Verified,
    /// Every member is a minimal cut; completeness was not checked because
    /// the pair has more than [`VERIFY_COMPLETENESS_LIMIT`] candidate elements.
    Partial,
    Failed(String),
}

impl PairVerdict {
    pub fn passed(&self) -> bool {
        !matches!(self, PairVerdict::Failed(_))
    }
}

/// Checks that each member of `family` disconnects the pair, that dropping
/// any one element from it reconnects the pair, and (for small instances)
/// that the exhaustive engine finds nothing more.
pub fn verify_pair(t: &Topology, src: usize, dst: usize, family: &SetFamily, include_edges: bool) -> PairVerdict {
    let show = |s: &ElementSet| {
        let labels: Vec<String> = s.iter().map(|e| t.element_label(e)).collect();
        format!("{{{}}}", labels.join(","))
    };
    for cut in family.canonical() {
        match t.is_connected_after_removal(&cut, src, dst) {
            Err(e) => return PairVerdict::Failed(e.to_string()),
            Ok(true) => return PairVerdict::Failed(format!("{} does not disconnect the pair", show(&cut))),
            Ok(false) => {}
        }
        for e in &cut {
            let smaller = cut.without(e);
            if !t.is_connected_after_removal(&smaller, src, dst).unwrap_or(true) {
                return PairVerdict::Failed(format!(
                    "{} is not minimal: {} already disconnects",
                    show(&cut),
                    show(&smaller)
                ));
            }
        }
    }
    let universe = t.pair_universe(src, dst, include_edges);
    if universe.len() > VERIFY_COMPLETENESS_LIMIT {
        return PairVerdict::Partial;
    }
    let mps = match find_mps(t, src, dst, include_edges) {
        Ok(m) => m,
        Err(e) => return PairVerdict::Failed(e.to_string()),
    };
    let expected = combinatorial_mcs(&mps.interiors, &universe, &Budget::unlimited()).expect("universe within limit");
    if let Some(missing) = expected.canonical().into_iter().find(|s| !family.contains(s)) {
        return PairVerdict::Failed(format!("minimal cut set {} is missing", show(&missing)));
    }
    if expected.len() != family.len() {
        return PairVerdict::Failed("family has members that are not minimal cut sets".into());
    }
    PairVerdict::Verified
}
