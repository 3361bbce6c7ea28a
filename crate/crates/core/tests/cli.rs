// SPDX-License-Identifier: Apache-2.0
//! End-to-end runs of the `aig-orch` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use aig_orch::{aiger, orch, Policy};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_aig-orch"));
    c.env_remove("ORCH_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn cec_of_file_with_itself() {
    let f = data("benchmarks/c17.aig");
    let o = run(&["cec", s(&f), s(&f), "--exhaustive"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn cec_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = data("benchmarks/alu4.aig");
    let mut g = aiger::read_file(&a).unwrap();
    g.set_po(1, !g.po(1));
    let b = dir.path().join("bad.aig");
    aiger::write_file(&b, &g).unwrap();
    assert_eq!(run(&["cec", s(&a), s(&b)]).status.code(), Some(1));

    let wide = data("benchmarks/add12.aig");
    let o = run(&[
        "cec",
        s(&wide),
        s(&wide),
        "--patterns",
        "256",
        "--seed",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("256"));
}

#[test]
fn io_and_usage_errors() {
    let o = run(&["opt", "--pass", "rw", "/nonexistent/x.aig"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(
        run(&["opt", "--pass", "nope", s(&data("benchmarks/c17.aig"))])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(
        run(&[
            "flow",
            "--script",
            "b;rw -K 6",
            s(&data("benchmarks/c17.aig"))
        ])
        .status
        .code(),
        Some(64)
    );

    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.aag");
    std::fs::write(&junk, "aag 1 2 3\n").unwrap();
    assert_eq!(run(&["stats", s(&junk)]).status.code(), Some(3));
}

#[test]
fn opt_on_fragment_prints_reduction() {
    let f = data("tests/data/fragment.aag");
    // expected value from applying the policy through the library
    let mut g = aiger::read_file(&f).unwrap();
    let st = orch::run_pass(&mut g, &Policy::local_greedy(false));
    let expected = st.nodes_before - st.nodes_after;
    assert_eq!(expected, 3);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.aag");
    let o = run(&["opt", "--pass", "lgp", s(&f), "-o", s(&out), "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.contains(&format!("reduction {expected} nodes")),
        "{text}"
    );
    assert!(text.contains("equivalent"));
    let written = std::fs::read_to_string(&out).unwrap();
    assert!(written.starts_with("aag "));
    assert_eq!(aiger::read_file(&out).unwrap().size(), 2);
}

#[test]
fn opt_zero_cost_and_window_flags() {
    let f = data("benchmarks/pla10.aig");
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.csv");
    let o = run(&[
        "opt",
        "--policy",
        "o3",
        "-z",
        "-K",
        "6",
        s(&f),
        "--report",
        s(&report),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let csv = std::fs::read_to_string(&report).unwrap();
    assert!(
        csv.lines().nth(1).unwrap().starts_with("pla10,z3,"),
        "{csv}"
    );
}

fn bench_dir(designs: &[&str]) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for d in designs {
        std::fs::copy(
            data(&format!("benchmarks/{d}.aig")),
            dir.path().join(format!("{d}.aig")),
        )
        .unwrap();
    }
    dir
}

#[test]
fn bench_cross_product_rows() {
    let dir = bench_dir(&["c17", "alu4", "maj7"]);
    let report = dir.path().join("out.csv");
    let o = run(&[
        "bench",
        "--dir",
        s(dir.path()),
        "--scripts",
        "rw,o3",
        "--report",
        s(&report),
        "--jobs",
        "2",
        "--verify",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_path(&report).unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 6);
    let keys: Vec<(String, String)> = rows
        .iter()
        .map(|r| (r[0].to_string(), r[1].to_string()))
        .collect();
    assert_eq!(keys[0], ("alu4".to_string(), "rw".to_string()));
    assert_eq!(keys[5], ("maj7".to_string(), "o3".to_string()));
}

#[test]
fn bench_output_is_reproducible() {
    let dir = bench_dir(&["alu4", "pla10", "add12"]);
    let mut outputs = Vec::new();
    for (i, jobs) in ["1", "3"].iter().enumerate() {
        let report = dir.path().join(format!("r{i}.csv"));
        let o = bin()
            .args([
                "bench",
                "--dir",
                s(dir.path()),
                "--scripts",
                "resyn,lgp-resyn,o-resyn3",
                "--report",
                s(&report),
                "--jobs",
                jobs,
                "--verify",
                "--no-timing",
            ])
            .env("ORCH_SEED", "17")
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        outputs.push(std::fs::read(&report).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn stats_reports_sizes() {
    let f = data("benchmarks/mul4.aig");
    let o = run(&["stats", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    let g = aiger::read_file(&f).unwrap();
    assert!(stdout(&o).contains(&format!("ands {}", g.size())));
}
