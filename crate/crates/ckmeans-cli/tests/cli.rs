//! End-to-end tests driving the compiled `ckmeans` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_ckmeans")
}

fn run(args: &[&str], cwd: &Path) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn write(path: &Path, contents: &str) {
    std::fs::write(path, contents).unwrap();
}

fn blob_manifest(dir: &Path) -> PathBuf {
    let path = dir.join("blobs.csv");
    write(
        &path,
        "name,n,d,k,std,seed\ncli_a,90,2,3,0.7,11\ncli_b,80,3,2,0.9,12\n",
    );
    path
}

#[test]
fn gen_writes_one_csv_per_manifest_row() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = blob_manifest(dir.path());
    let out = run(
        &[
            "gen",
            "--manifest",
            manifest.to_str().unwrap(),
            "--out",
            "data",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let a = std::fs::read_to_string(dir.path().join("data/cli_a.csv")).unwrap();
    assert!(a.starts_with("f0,f1,label\n"));
    assert_eq!(a.lines().count(), 91); // header + 90 points
    assert!(dir.path().join("data/cli_b.csv").exists());
}

#[test]
fn run_prints_metric_report_json() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = blob_manifest(dir.path());
    assert!(run(
        &[
            "gen",
            "--manifest",
            manifest.to_str().unwrap(),
            "--out",
            "data"
        ],
        dir.path()
    )
    .status
    .success());
    let out = run(
        &[
            "run",
            "--data",
            "data/cli_a.csv",
            "--label-col",
            "label",
            "--k",
            "3",
            "--init",
            "fckmeans",
            "--standardize",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["IS", "RI", "MI", "SI", "DB", "CH"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    // well separated blobs are recovered perfectly
    assert_eq!(report["RI"], serde_json::json!(1.0));
}

#[test]
fn run_without_label_column_omits_truth_metrics() {
    let dir = tempfile::tempdir().unwrap();
    write(
        &dir.path().join("plain.csv"),
        "x,y\n0.0,0.0\n0.2,0.1\n5.0,5.0\n5.2,5.1\n",
    );
    let out = run(
        &["run", "--data", "plain.csv", "--k", "2", "--init", "ckmeans"],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.get("IS").is_some());
    assert!(report.get("RI").is_none());
    assert!(report.get("MI").is_none());
}

#[test]
fn run_is_deterministic_for_fixed_seed() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = blob_manifest(dir.path());
    assert!(run(
        &[
            "gen",
            "--manifest",
            manifest.to_str().unwrap(),
            "--out",
            "data"
        ],
        dir.path()
    )
    .status
    .success());
    let args = [
        "run",
        "--data",
        "data/cli_b.csv",
        "--label-col",
        "label",
        "--k",
        "2",
        "--init",
        "rckmeans",
        "--seed",
        "99",
    ];
    let first = run(&args, dir.path());
    let second = run(&args, dir.path());
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn bench_then_rank_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    write(
        &dir.path().join("grid.toml"),
        r#"
master_seed = 3
restarts = 2

[[datasets]]
kind = "blob"
name = "grid_a"
n = 60
d = 2
k = 3
std = 0.5
seed = 21

[[datasets]]
kind = "blob"
name = "grid_b"
n = 70
d = 3
k = 2
std = 0.5
seed = 22
"#,
    );
    let out = run(
        &["bench", "--manifest", "grid.toml", "--out", "results"],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    for file in [
        "results/results.json",
        "results/table_IS.csv",
        "results/table_RI.csv",
        "results/ranks_IS.csv",
    ] {
        assert!(dir.path().join(file).exists(), "missing {file}");
    }
    // every mean table row carries exactly one best flag
    let table = std::fs::read_to_string(dir.path().join("results/table_IS.csv")).unwrap();
    for line in table.lines().skip(1) {
        assert_eq!(line.matches('*').count(), 1, "row {line}");
    }
    let ranked = run(
        &[
            "rank",
            "--results",
            "results/results.json",
            "--metric",
            "IS",
        ],
        dir.path(),
    );
    assert!(ranked.status.success(), "{ranked:?}");
    let stdout = String::from_utf8(ranked.stdout).unwrap();
    assert!(stdout.starts_with("metric,method,mean_rank,chi_square,n_datasets,direction\n"));
    // matches the pre-computed ranks file byte for byte
    let saved = std::fs::read_to_string(dir.path().join("results/ranks_IS.csv")).unwrap();
    assert_eq!(stdout, saved);
}

#[test]
fn serial_and_parallel_bench_agree() {
    let dir = tempfile::tempdir().unwrap();
    write(
        &dir.path().join("grid.toml"),
        r#"
master_seed = 17
restarts = 2

[[datasets]]
kind = "blob"
name = "par_a"
n = 50
d = 2
k = 2
std = 0.6
seed = 31
"#,
    );
    assert!(run(
        &["bench", "--manifest", "grid.toml", "--out", "par"],
        dir.path()
    )
    .status
    .success());
    assert!(run(
        &[
            "bench",
            "--manifest",
            "grid.toml",
            "--out",
            "ser",
            "--serial"
        ],
        dir.path()
    )
    .status
    .success());
    let par = std::fs::read(dir.path().join("par/results.json")).unwrap();
    let ser = std::fs::read(dir.path().join("ser/results.json")).unwrap();
    assert_eq!(par, ser);
}

#[test]
fn exit_codes_follow_the_documented_convention() {
    let dir = tempfile::tempdir().unwrap();
    write(&dir.path().join("tiny.csv"), "x\n1.0\n2.0\n9.0\n");

    // 0: success
    let ok = run(
        &["run", "--data", "tiny.csv", "--k", "2", "--init", "ckmeans"],
        dir.path(),
    );
    assert_eq!(ok.status.code(), Some(0));

    // 0: help
    assert_eq!(run(&["--help"], dir.path()).status.code(), Some(0));

    // 1: usage — clap-level and bad method/metric names
    assert_eq!(run(&["frobnicate"], dir.path()).status.code(), Some(1));
    assert_eq!(
        run(
            &["run", "--data", "tiny.csv", "--k", "2", "--init", "bogus"],
            dir.path()
        )
        .status
        .code(),
        Some(1)
    );

    // 2: data errors — missing file, malformed cell, impossible k
    assert_eq!(
        run(
            &["run", "--data", "nope.csv", "--k", "2", "--init", "ckmeans"],
            dir.path()
        )
        .status
        .code(),
        Some(2)
    );
    write(&dir.path().join("bad.csv"), "x\n1.0\noops\n");
    assert_eq!(
        run(
            &["run", "--data", "bad.csv", "--k", "2", "--init", "ckmeans"],
            dir.path()
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        run(
            &["run", "--data", "tiny.csv", "--k", "99", "--init", "ckmeans"],
            dir.path()
        )
        .status
        .code(),
        Some(2)
    );
}
