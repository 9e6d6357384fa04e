//! End-to-end tests of the command-line binary: exit codes, JSON shapes, and
//! the table-file round trip.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_loopsmith"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn tmp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("loopsmith-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn qa_then_analyze_round_trips() {
    let dir = tmp_dir("roundtrip");
    let tbl = dir.join("q.tbl");
    let out = run(&["qa", "--p", "3", "--matrix", "0,1,2,0", "--out", tbl.to_str().unwrap()]);
    assert!(out.status.success());

    let a1 = run(&["analyze", tbl.to_str().unwrap(), "--json"]);
    assert!(a1.status.success());
    let report = stdout_json(&a1);
    assert_eq!(report["order"], 27);
    assert_eq!(report["automorphic"], true);
    assert_eq!(report["commutative"], false);
    assert_eq!(report["exponent"], 3);
    assert_eq!(report["center"], serde_json::json!([0]));
    assert_eq!(report["nilpotency_class"], "not_nilpotent");
    assert_eq!(report["nuclei"]["middle"].as_array().unwrap().len(), 9);

    // Serialize the parsed loop again; analysis is identical.
    let a2 = run(&["analyze", tbl.to_str().unwrap(), "--json"]);
    assert_eq!(stdout_json(&a1), stdout_json(&a2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn qa_json_contains_the_table() {
    let out = run(&["qa", "--p", "2", "--matrix", "0,1,1,1", "--json"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["order"], 8);
    assert_eq!(v["p"], 2);
    assert_eq!(v["plane_type"], 2);
    assert_eq!(v["table"].as_array().unwrap().len(), 8);
}

#[test]
fn qa_rejects_non_anisotropic_matrices() {
    let out = run(&["qa", "--p", "3", "--matrix", "1,0,0,1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("error"), "stderr: {err}");
}

#[test]
fn iso_reports_witness_and_negative() {
    let dir = tmp_dir("iso");
    let a = dir.join("a.tbl");
    let b = dir.join("b.tbl");
    let c = dir.join("c.tbl");
    assert!(run(&["qa", "--p", "3", "--matrix", "0,1,2,0", "--out", a.to_str().unwrap()])
        .status
        .success());
    // Scaled matrix: same class.
    assert!(run(&["qa", "--p", "3", "--matrix", "0,2,1,0", "--out", b.to_str().unwrap()])
        .status
        .success());
    // Different type: different class.
    assert!(run(&["qa", "--p", "3", "--matrix", "1,1,2,1", "--out", c.to_str().unwrap()])
        .status
        .success());

    let same = run(&["iso", a.to_str().unwrap(), b.to_str().unwrap(), "--json"]);
    assert_eq!(same.status.code(), Some(0));
    let v = stdout_json(&same);
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["witness"].as_array().unwrap().len(), 27);

    let diff = run(&["iso", a.to_str().unwrap(), c.to_str().unwrap()]);
    assert_eq!(diff.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&diff.stdout).contains("not-isomorphic"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn witness_exit_codes_match_existence() {
    let missing = run(&["witness", "--p", "2", "--type", "1"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stdout).contains("not exists"));

    let found = run(&["witness", "--p", "5", "--type", "3", "--json"]);
    assert_eq!(found.status.code(), Some(0));
    let v = stdout_json(&found);
    assert_eq!(v["exists"], true);
    assert_eq!(v["matrix"].as_array().unwrap().len(), 4);
}

#[test]
fn classify_qa_json_counts() {
    let out = run(&["classify-qa", "--p", "3", "--json"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["class_count"], 2);
    assert_eq!(v["confidence"], "verified");
    assert_eq!(v["p"], 3);
    let types: Vec<u64> = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["plane_type"].as_u64().unwrap())
        .collect();
    let mut sorted = types.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, vec![1, 3]);

    let over = run(&["classify-qa", "--p", "7"]);
    assert_eq!(over.status.code(), Some(2), "default ceiling rejects p = 7");
}

#[test]
fn perron_json_shape() {
    let out = run(&["perron", "--p", "13", "--json"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["p"], 13);
    assert_eq!(v["counts"].as_array().unwrap().len(), 12);
    for row in v["counts"].as_array().unwrap() {
        assert_eq!(
            row["residues"].as_u64().unwrap() + row["nonresidues"].as_u64().unwrap(),
            7,
            "the shifted residue set has (p+1)/2 = 7 elements at p = 13"
        );
    }
}

#[test]
fn search_writes_canonical_tables() {
    let dir = tmp_dir("search");
    let out = run(&[
        "search",
        "--order",
        "6",
        "--automorphic",
        "--nonassociative",
        "--limit",
        "0",
        "--budget",
        "120",
        "--out",
        dir.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["found"], 1);
    assert_eq!(v["exhausted"], true);
    let file = v["files"][0].as_str().unwrap();
    let analyzed = run(&["analyze", file, "--json"]);
    assert!(analyzed.status.success());
    let report = stdout_json(&analyzed);
    assert_eq!(report["order"], 6);
    assert_eq!(report["automorphic"], true);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn search_negative_result_exits_one() {
    // Commutative + nonassociative has no models at order 5.
    let out = run(&[
        "search",
        "--order",
        "5",
        "--commutative",
        "--nonassociative",
        "--limit",
        "0",
        "--budget",
        "60",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["found"], 0);
    assert_eq!(v["exhausted"], true);
}

#[test]
fn analyze_reports_parse_errors_with_line_numbers() {
    let dir = tmp_dir("parse");
    let bad = dir.join("bad.tbl");
    std::fs::write(&bad, "3\n0 1 2\n1 2 0\n2 0 9\n").unwrap();
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line") || err.contains("4"), "stderr: {err}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn jobs_flag_is_accepted() {
    let out = run(&["--jobs", "2", "perron", "--p", "5"]);
    assert!(out.status.success());
}

#[test]
fn budget_env_variable_caps_search_time() {
    let start = std::time::Instant::now();
    let out = bin()
        .env("LOOPSMITH_BUDGET_SECONDS", "1")
        .args([
            "search",
            "--order",
            "12",
            "--automorphic",
            "--nonassociative",
            "--limit",
            "1",
            "--json",
        ])
        .output()
        .expect("binary runs");
    let v = stdout_json(&out);
    // Either it finds something fast or the 1-second budget stops it; both
    // must return promptly.
    assert!(start.elapsed() < std::time::Duration::from_secs(30));
    assert!(v["found"].is_u64());
}
