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

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const SAMPLE: &str = "# example network\nS A\nS C\nA B\nA D\nC D\nD B\nD E\nE F\nB T\nF T\n";
const GOLDEN: &str = r#"[["A","C"],["A","D"],["B","D"],["B","E"],["B","F"]]"#;

struct Sandbox {
    dir: TempDir,
}

impl Sandbox {
    fn new() -> Self {
        let s = Sandbox {
            dir: TempDir::new().unwrap(),
        };
        s.write("sample.txt", SAMPLE);
        s.write("two_node.txt", "A B\n");
        s
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.path(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_mcskit"))
            .args(args)
            .current_dir(self.dir.path())
            .env("FAST_MCS_THREADS", "2")
            .output()
            .unwrap()
    }
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn read(p: &Path) -> String {
    fs::read_to_string(p).unwrap()
}

#[test]
fn mps_table_and_json() {
    let sb = Sandbox::new();
    let o = sb.run(&["mps", "sample.txt", "--src", "S", "--dst", "T"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines.contains(&"S-A-B-T\tA B"));
    assert!(lines.contains(&"S-C-D-E-F-T\tC D E F"));

    let o = sb.run(&["mps", "sample.txt", "--src", "S", "--dst", "T", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let paths: Vec<Vec<String>> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(paths.len(), 4);
    assert!(paths
        .iter()
        .all(|p| p.first().unwrap() == "S" && p.last().unwrap() == "T"));
}

#[test]
fn mps_rejects_bad_pairs() {
    let sb = Sandbox::new();
    let o = sb.run(&["mps", "sample.txt", "--src", "S", "--dst", "S"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).is_empty());
    assert!(!stderr(&o).is_empty());
    assert_eq!(code(&sb.run(&["mps", "sample.txt", "--src", "S", "--dst", "Q"])), 2);
}

#[test]
fn mcs_golden_output_for_every_method() {
    let sb = Sandbox::new();
    for method in ["fast", "shannon", "combinatorial"] {
        let o = sb.run(&["mcs", "sample.txt", "--src", "S", "--dst", "T", "--method", method]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert_eq!(stdout(&o), format!("{GOLDEN}\n"), "{method}");
    }
    let o = sb.run(&["mcs", "sample.txt", "--src", "T", "--dst", "S", "--format", "table"]);
    assert_eq!(stdout(&o), "A C\nA D\nB D\nB E\nB F\n");
}

#[test]
fn mcs_on_a_direct_edge() {
    let sb = Sandbox::new();
    let o = sb.run(&["mcs", "two_node.txt", "--src", "A", "--dst", "B"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "[]\n");
    assert!(stderr(&o).contains("pair directly connected; no cut set over interior elements"));
}

#[test]
fn mcs_on_a_disconnected_pair() {
    let sb = Sandbox::new();
    sb.write("split.json", r#"{"nodes":["A","B","C"],"edges":[["A","B"]]}"#);
    let o = sb.run(&["mcs", "split.json", "--src", "A", "--dst", "C", "--verify"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "[[]]\n");
}

#[test]
fn mcs_verify_passes() {
    let sb = Sandbox::new();
    let o = sb.run(&["mcs", "sample.txt", "--src", "S", "--dst", "T", "--verify"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("verified"));
}

#[test]
fn mcs_times_out() {
    let sb = Sandbox::new();
    let mut grid = String::new();
    for r in 0..5 {
        for c in 0..5 {
            if c < 4 {
                grid += &format!("g{r}{c} g{r}{}\n", c + 1);
            }
            if r < 4 {
                grid += &format!("g{r}{c} g{}{c}\n", r + 1);
            }
        }
    }
    sb.write("grid.txt", &grid);
    let o = sb.run(&[
        "mcs",
        "grid.txt",
        "--src",
        "g00",
        "--dst",
        "g44",
        "--method",
        "combinatorial",
        "--timeout",
        "0.000001",
    ]);
    assert_eq!(code(&o), 4, "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn input_errors_exit_1() {
    let sb = Sandbox::new();
    sb.write("bad.txt", "A B\nC\n");
    let o = sb.run(&["mcs", "bad.txt", "--src", "A", "--dst", "B"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    assert_eq!(code(&sb.run(&["mcs", "missing.txt", "--src", "A", "--dst", "B"])), 1);
    assert_eq!(
        code(&sb.run(&["mcs", "sample.txt", "--src", "S", "--dst", "T", "--bogus"])),
        1
    );
    assert_eq!(
        code(&sb.run(&["mcs", "sample.txt", "--src", "S", "--dst", "T", "--method", "magic"])),
        1
    );
    assert_eq!(
        code(&sb.run(&["mcs", "sample.txt", "--src", "S", "--dst", "T", "--timeout", "-1"])),
        1
    );
}

#[test]
fn help_documents_every_flag() {
    let sb = Sandbox::new();
    let expected: [(&str, &[&str]); 4] = [
        ("mps", &["--src", "--dst", "--format", "--include-edges"]),
        (
            "mcs",
            &[
                "--src",
                "--dst",
                "--method",
                "--format",
                "--verify",
                "--timeout",
                "--include-edges",
            ],
        ),
        (
            "bench",
            &[
                "--generate",
                "--methods",
                "--pairs",
                "--timeout",
                "--repetitions",
                "--include-edges",
                "--out",
                "--summary",
            ],
        ),
        ("plot-data", &["--out"]),
    ];
    for (sub, flags) in expected {
        let o = sb.run(&[sub, "--help"]);
        assert_eq!(code(&o), 0);
        let text = stdout(&o);
        for f in flags {
            assert!(text.contains(f), "{sub} --help lacks {f}");
        }
    }
    assert_eq!(code(&sb.run(&["--help"])), 0);
}

#[test]
fn bench_writes_records_and_summary() {
    let sb = Sandbox::new();
    let o = sb.run(&[
        "bench",
        "sample.txt",
        "--methods",
        "fast,shannon,combinatorial",
        "--repetitions",
        "1",
        "--out",
        "r.csv",
        "--summary",
        "s.json",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    let csv = read(&sb.path("r.csv"));
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "topology,num_nodes,num_edges,src,dst,method,status,mps_time_ns,mcs_time_ns,num_mps,num_mcs,agreement"
    );
    assert_eq!(lines.count(), 84);

    let summary: serde_json::Value = serde_json::from_str(&read(&sb.path("s.json"))).unwrap();
    let methods = &summary["sample"]["methods"];
    for m in ["fast", "shannon", "combinatorial"] {
        assert_eq!(methods[m]["pairs"], 28, "{summary}");
    }
    assert_eq!(summary["sample"]["agreement"], true);

    let o = sb.run(&["plot-data", "r.csv"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], "topology,method,total_mps_time_ns,total_mcs_time_ns");
    assert_eq!(rows.len(), 4);
    assert!(rows[1].starts_with("sample,fast,"));

    let o = sb.run(&["plot-data", "r.csv", "--out", "plot.csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(read(&sb.path("plot.csv")), out);
}

#[test]
fn bench_pair_selection_and_generation() {
    let sb = Sandbox::new();
    let o = sb.run(&[
        "bench",
        "sample.txt",
        "--methods",
        "fast",
        "--pairs",
        "S:T",
        "--repetitions",
        "1",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 2);

    let o = sb.run(&[
        "bench",
        "--generate",
        "n=17,p=0.25,seed=7",
        "--methods",
        "fast,shannon",
        "--repetitions",
        "1",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1 + 136 * 2);
    assert!(out.lines().nth(1).unwrap().starts_with("gen_n17_p0.25_s7,17,"));
}

#[test]
fn bench_errors() {
    let sb = Sandbox::new();
    assert_eq!(code(&sb.run(&["bench", "--methods", "fast"])), 1);
    assert_eq!(code(&sb.run(&["bench", "sample.txt", "--pairs", "S:Q"])), 2);
    assert_eq!(code(&sb.run(&["bench", "sample.txt", "--pairs", "ST"])), 1);
    assert_eq!(code(&sb.run(&["bench", "sample.txt", "--repetitions", "0"])), 1);
    assert_eq!(code(&sb.run(&["bench", "--generate", "n=17,p=7,seed=1"])), 1);
    let o = sb.run(&["bench", "sample.txt", "--pairs", "S:T", "--out", "no/such/dir/r.csv"]);
    assert_ne!(code(&o), 0);
}

#[test]
fn plot_data_edge_cases() {
    let sb = Sandbox::new();
    let header =
        "topology,num_nodes,num_edges,src,dst,method,status,mps_time_ns,mcs_time_ns,num_mps,num_mcs,agreement\n";
    sb.write("empty.csv", header);
    let o = sb.run(&["plot-data", "empty.csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "topology,method,total_mps_time_ns,total_mcs_time_ns\n");

    sb.write(
        "timeouts.csv",
        &format!("{header}g,3,2,a,b,fast,ok,10,20,1,1,true\ng,3,2,a,c,fast,timeout,5,30000000000,1,,true\n"),
    );
    let o = sb.run(&["plot-data", "timeouts.csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().nth(1), Some("g,fast,15,20"));
    assert!(stderr(&o).contains("timed-out"));

    sb.write("bad.csv", "not,a,records,file\n1,2,3,4\n");
    assert_eq!(code(&sb.run(&["plot-data", "bad.csv"])), 1);
    assert_eq!(code(&sb.run(&["plot-data", "absent.csv"])), 1);
}

#[test]
fn runs_are_repeatable() {
    let sb = Sandbox::new();
    let args = ["mcs", "sample.txt", "--src", "A", "--dst", "F", "--method", "shannon"];
    let a = sb.run(&args);
    let b = sb.run(&args);
    assert_eq!(a.stdout, b.stdout);
    let entries: Vec<_> = fs::read_dir(sb.dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 2);
}
