use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn canram(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_canram")).args(args).output().expect("spawn canram")
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is json")
}

#[test]
fn erc_reports_five_for_triples() {
    let out = canram(&["erc", "1", "3", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["tool"], "canram");
    assert_eq!(r["command"], "erc 1 3 6");
    assert_eq!(r["result"]["n"], 5);
}

#[test]
fn functor_orients_missing_edges_backwards() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", &json!({"kind": "ordered_graph", "n": 2, "edges": []}));
    let out = canram(&["functor", "gra-tour", "to_tournament", "-i", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["structures"][0]["arcs"], json!([[1, 0]]));
}

#[test]
fn validate_names_broken_axiom() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.json", &json!({"kind": "tournament", "n": 2, "arcs": [[0, 1], [1, 0]]}));
    let out = canram(&["validate", "-i", t.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("exactly-one-arc"), "{err}");
}

#[test]
fn malformed_json_is_input_error() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("bad.json");
    fs::write(&p, "{not json").unwrap();
    let out = canram(&["validate", "-i", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn one_based_indexing_flag() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", &json!({"kind": "ordered_graph", "n": 2, "edges": [[1, 2]]}));
    let out = canram(&["--indexing", "1", "functor", "gra-tour", "to_tournament", "-i", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["structures"][0]["arcs"], json!([[0, 1]]));
}

#[test]
fn failed_verification_exits_two() {
    let dir = TempDir::new().unwrap();
    let abc = write(
        &dir,
        "abc.json",
        &json!([{"kind": "chain", "n": 1}, {"kind": "chain", "n": 3}, {"kind": "chain", "n": 4}]),
    );
    let out = canram(&["can", "verify", "-i", abc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["result"]["holds"], false);
    assert!(r["result"]["counterexample"].is_object() || r["result"]["counterexample"].is_array());
}

#[test]
fn successful_verification_exits_zero() {
    let dir = TempDir::new().unwrap();
    let abc = write(
        &dir,
        "abc.json",
        &json!([{"kind": "chain", "n": 1}, {"kind": "chain", "n": 2}, {"kind": "chain", "n": 5}]),
    );
    let out = canram(&["can", "verify", "-i", abc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["outcome"], "holds");
}

#[test]
fn small_budget_exits_three() {
    let out = canram(&["--max-colorings", "3", "erc", "1", "3", "6"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_file_matches_stdout() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("out.json");
    let out = canram(&["erc", "1", "2", "4", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = canram(&["erc", "1", "2", "4"]).stdout;
    assert_eq!(fs::read(&path).unwrap(), stdout);
}

#[test]
fn worker_count_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let abc = write(
        &dir,
        "abc.json",
        &json!([{"kind": "chain", "n": 1}, {"kind": "chain", "n": 3}, {"kind": "chain", "n": 6}]),
    );
    let p = abc.to_str().unwrap();
    for args in [vec!["erc", "1", "4", "10"], vec!["can", "verify", "-i", p]] {
        let one: Vec<&str> = ["--workers", "1"].into_iter().chain(args.iter().copied()).collect();
        let eight: Vec<&str> = ["--workers", "8"].into_iter().chain(args.iter().copied()).collect();
        let a = canram(&one);
        let b = canram(&eight);
        assert_eq!(a.status.code(), b.status.code());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
