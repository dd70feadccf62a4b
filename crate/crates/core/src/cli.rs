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

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 input error, 2 invalid node pair, 3 verification
//! or agreement failure, 4 engine timeout.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{
    self, compute_mcs, read_records_csv, run_bench, summarize, verify_pair, write_plot_csv, write_records_csv,
    BenchConfig, BenchError, Method, PairSelection, PairVerdict,
};
use crate::budget::{Budget, EngineError};
use crate::generate::{random_connected, GraphSpec};
use crate::mps::find_mps;
use crate::topology::{Format, Topology};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_PAIR: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_TIMEOUT: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "mcskit",
    version,
    about = "Minimal path sets and minimal cut sets of network node pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the minimal path sets between two nodes
    Mps(MpsArgs),
    /// Compute the minimal cut sets between two nodes
    Mcs(McsArgs),
    /// Time every engine over all node pairs of one or more topologies
    Bench(BenchArgs),
    /// Aggregate a bench records CSV into per-topology, per-method totals
    PlotData(PlotArgs),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum InputFormat {
    EdgeList,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

#[derive(Args, Debug)]
struct PairArgs {
    /// Topology file (edge list, or JSON when the extension is .json)
    topology: PathBuf,
    /// Source node label
    #[arg(long)]
    src: String,
    /// Destination node label
    #[arg(long)]
    dst: String,
    /// Treat edges as failable elements too
    #[arg(long)]
    include_edges: bool,
    /// Override the input format guessed from the file extension
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
}

#[derive(Args, Debug)]
struct MpsArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Output format
    #[arg(long, value_enum, default_value = "table")]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct McsArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Cut set engine
    #[arg(long, default_value = "fast", value_parser = parse_method)]
    method: Method,
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Check the result against the definition of a minimal cut set
    #[arg(long)]
    verify: bool,
    /// Abort the engine after this many seconds
    #[arg(long, value_parser = parse_seconds)]
    timeout: Option<Duration>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Topology files
    topologies: Vec<PathBuf>,
    /// Add a random connected graph, e.g. `n=17,p=0.25,seed=7` (repeatable)
    #[arg(long, value_parser = clap::value_parser!(GraphSpec))]
    generate: Vec<GraphSpec>,
    /// Comma-separated engines
    #[arg(long, value_delimiter = ',', default_value = "fast", value_parser = parse_method)]
    methods: Vec<Method>,
    /// Restrict to these pairs, e.g. `S:T,A:B` (default: every pair)
    #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
    pairs: Vec<(String, String)>,
    /// Per-engine timeout in seconds
    #[arg(long, default_value = "30", value_parser = parse_seconds)]
    timeout: Duration,
    /// Timed runs per engine; the median is reported
    #[arg(long, default_value_t = 3)]
    repetitions: usize,
    /// Treat edges as failable elements too
    #[arg(long)]
    include_edges: bool,
    /// Records CSV path (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Summary JSON path
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PlotArgs {
    /// Records CSV written by `bench`
    records: PathBuf,
    /// Output path (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

fn parse_seconds(s: &str) -> Result<Duration, String> {
    let secs: f64 = s.parse().map_err(|_| format!("`{s}` is not a number of seconds"))?;
    if !(secs > 0.0 && secs.is_finite()) {
        return Err("timeout must be a positive number of seconds".into());
    }
    Ok(Duration::from_secs_f64(secs))
}

fn parse_pair(s: &str) -> Result<(String, String), String> {
    match s.split_once(':') {
        Some((a, b)) if !a.is_empty() && !b.is_empty() => Ok((a.to_string(), b.to_string())),
        _ => Err(format!("expected SRC:DST, got `{s}`")),
    }
}

/// Runs the CLI with explicit argument list and output streams; returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Mps(a) => cmd_mps(&a, stdout, stderr),
        Command::Mcs(a) => cmd_mcs(&a, stdout, stderr),
        Command::Bench(a) => cmd_bench(&a, stdout, stderr),
        Command::PlotData(a) => cmd_plot_data(&a, stdout, stderr),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            code
        }
    }
}

struct Failure(i32, String);

type CmdResult = Result<i32, Failure>;

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_INPUT, e.to_string())
}

fn load(path: &Path, format: Option<InputFormat>) -> Result<Topology, Failure> {
    let format = match format {
        Some(InputFormat::EdgeList) => Format::EdgeList,
        Some(InputFormat::Json) => Format::Json,
        None => Format::from_path(path),
    };
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("topology");
    let file = File::open(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    Topology::parse(file, format, name).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn load_pair(p: &PairArgs) -> Result<(Topology, usize, usize), Failure> {
    let t = load(&p.topology, p.input_format)?;
    let (s, d) = t
        .resolve_pair(&p.src, &p.dst)
        .map_err(|e| Failure(EXIT_PAIR, e.to_string()))?;
    Ok((t, s, d))
}

fn io_err(e: io::Error) -> Failure {
    input_err(format!("write failed: {e}"))
}

fn cmd_mps(a: &MpsArgs, stdout: &mut dyn Write, _stderr: &mut dyn Write) -> CmdResult {
    let (t, s, d) = load_pair(&a.pair)?;
    let r = find_mps(&t, s, d, a.pair.include_edges).map_err(|e| Failure(EXIT_PAIR, e.to_string()))?;
    let paths = r.path_labels(&t);
    match a.format {
        OutputFormat::Json => {
            writeln!(stdout, "{}", serde_json::to_string(&paths).expect("labels serialize")).map_err(io_err)?;
        }
        OutputFormat::Table => {
            writeln!(stdout, "path\tinterior").map_err(io_err)?;
            for (p, nodes) in r.paths.iter().zip(&paths) {
                let interior = crate::mps::interior(&t, p, a.pair.include_edges);
                let labels: Vec<String> = interior.iter().map(|e| t.element_label(e)).collect();
                writeln!(stdout, "{}\t{}", nodes.join("-"), labels.join(" ")).map_err(io_err)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_mcs(a: &McsArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let (t, s, d) = load_pair(&a.pair)?;
    let include_edges = a.pair.include_edges;
    let r = find_mps(&t, s, d, include_edges).map_err(|e| Failure(EXIT_PAIR, e.to_string()))?;
    let budget = a.timeout.map_or_else(Budget::unlimited, Budget::with_timeout);
    let universe = t.pair_universe(s, d, include_edges);
    let family = match compute_mcs(a.method, &r.interiors, &universe, &budget) {
        Ok(f) => f,
        Err(EngineError::Interrupted) => return Err(Failure(EXIT_TIMEOUT, format!("{} engine timed out", a.method))),
        Err(e) => return Err(input_err(e)),
    };
    if family.is_empty() {
        let _ = writeln!(
            stderr,
            "note: pair directly connected; no cut set over interior elements"
        );
    } else if family.contains_empty_set() {
        let _ = writeln!(stderr, "note: pair already disconnected");
    }
    match a.format {
        OutputFormat::Json => writeln!(stdout, "{}", t.family_to_json(&family)).map_err(io_err)?,
        OutputFormat::Table => {
            for cut in t.family_labels(&family) {
                writeln!(stdout, "{}", cut.join(" ")).map_err(io_err)?;
            }
        }
    }
    if a.verify {
        match verify_pair(&t, s, d, &family, include_edges) {
            PairVerdict::Verified => {
                let _ = writeln!(stderr, "verified");
            }
            PairVerdict::Partial => {
                let _ = writeln!(
                    stderr,
                    "partially verified: every member is a minimal cut; completeness skipped above {} elements",
                    bench::VERIFY_COMPLETENESS_LIMIT
                );
            }
            PairVerdict::Failed(why) => {
                let _ = writeln!(stderr, "verification failed: {why}");
                return Ok(EXIT_MISMATCH);
            }
        }
    }
    Ok(EXIT_OK)
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn cmd_bench(a: &BenchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    if a.topologies.is_empty() && a.generate.is_empty() {
        return Err(input_err("no topology given (pass files or --generate)"));
    }
    let mut topologies = Vec::new();
    for p in &a.topologies {
        topologies.push(load(p, None)?);
    }
    topologies.extend(a.generate.iter().map(random_connected));

    let config = BenchConfig {
        methods: a.methods.clone(),
        pairs: if a.pairs.is_empty() {
            PairSelection::All
        } else {
            PairSelection::Explicit(a.pairs.clone())
        },
        timeout: a.timeout,
        repetitions: a.repetitions,
        threads: bench::threads_from_env(),
        include_edges: a.include_edges,
    };
    let records = run_bench(&topologies, &config).map_err(|e| match e {
        BenchError::Pair { .. } => Failure(EXIT_PAIR, e.to_string()),
        other => input_err(other),
    })?;

    match &a.out {
        Some(path) => {
            let mut w = create(path)?;
            write_records_csv(&records, &mut w).map_err(input_err)?;
            w.flush().map_err(io_err)?;
        }
        None => write_records_csv(&records, &mut *stdout).map_err(input_err)?,
    }
    let summary = summarize(&records);
    if let Some(path) = &a.summary {
        let mut w = create(path)?;
        serde_json::to_writer_pretty(&mut w, &summary).map_err(input_err)?;
        writeln!(w).map_err(io_err)?;
        w.flush().map_err(io_err)?;
    }
    let timeouts = summary.timeouts();
    if timeouts > 0 {
        let _ = writeln!(stderr, "note: {timeouts} record(s) timed out");
    }
    if !summary.all_agree() {
        let _ = writeln!(stderr, "error: engines disagree on at least one pair");
        return Ok(EXIT_MISMATCH);
    }
    Ok(EXIT_OK)
}

fn cmd_plot_data(a: &PlotArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let file = File::open(&a.records).map_err(|e| input_err(format!("{}: {e}", a.records.display())))?;
    let records = read_records_csv(file).map_err(|e| input_err(format!("{}: {e}", a.records.display())))?;
    let summary = summarize(&records);
    let timeouts = summary.timeouts();
    if timeouts > 0 {
        let _ = writeln!(
            stderr,
            "note: {timeouts} timed-out record(s) excluded from the MCS totals"
        );
    }
    match &a.out {
        Some(path) => {
            let mut w = create(path)?;
            write_plot_csv(&summary, &mut w).map_err(input_err)?;
            w.flush().map_err(io_err)?;
        }
        None => write_plot_csv(&summary, &mut *stdout).map_err(input_err)?,
    }
    Ok(EXIT_OK)
}
