use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const X_CUBED: &str = "q = 3\ncurve = genus0\nmodulus = x^3\nbasepoint = inf\n";
const X_X2_1: &str = "q = 3\ncurve = genus0\nmodulus = x^3 + x\nbasepoint = inf\n";
const ELLIPTIC: &str = "q = 5\ncurve = elliptic\na = 1\nb = 0\nmodulus_points = (0,0);(2,0)\nbasepoint = O\n";

fn genjac(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genjac")).current_dir(dir).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr))
    })
}

fn setup() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("a.txt"), X_CUBED).unwrap();
    std::fs::write(dir.path().join("c.txt"), X_X2_1).unwrap();
    std::fs::write(dir.path().join("e.txt"), ELLIPTIC).unwrap();
    dir
}

#[test]
fn group_table() {
    let dir = setup();
    let out = genjac(dir.path(), &["group", "a.txt", "-r", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let orders: Vec<u64> = v["levels"].as_array().unwrap().iter().map(|l| l["order"].as_u64().unwrap()).collect();
    assert_eq!(orders, vec![9, 81]);
    assert_eq!(v["levels"][0]["factors"], serde_json::json!([3, 3]));
}

#[test]
fn lfun_reports_agreement() {
    let dir = setup();
    let out = genjac(dir.path(), &["lfun", "a.txt", "-B", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["euler==divisor_sum"], true);
    assert_eq!(v["levels"][0]["characters"].as_array().unwrap().len(), 9);
    assert_eq!(v["levels"][0]["characters"][0]["divisor_sum"], serde_json::json!([1, 3, 9, 27, 81, 243, 729]));
}

#[test]
fn output_is_deterministic() {
    let dir = setup();
    let a = genjac(dir.path(), &["lfun", "c.txt", "-r", "2"]);
    let b = genjac(dir.path(), &["lfun", "c.txt", "-r", "2"]);
    assert_eq!(a.stdout, b.stdout);
    genjac(dir.path(), &["points", "a.txt", "--out", "p.json"]);
    let written = std::fs::read(dir.path().join("p.json")).unwrap();
    assert_eq!(written, genjac(dir.path(), &["points", "a.txt"]).stdout);
}

#[test]
fn shifted_instance_is_reconstructed() {
    let dir = setup();
    let out = genjac(dir.path(), &["bundle", "a.txt", "--twist", "1,1,0", "-r", "2", "-B", "3", "--out", "b.json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = genjac(dir.path(), &["reconstruct", "a.txt", "b.json", "-R", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["outcome"], "Found");
    assert_eq!(v["result"]["designated"]["alpha"], serde_json::json!([[1, 1], [0, 1]]));
    assert_eq!(v["result"]["designated"]["l"], 0);

    let det = json(&genjac(dir.path(), &["detect", "b.json", "-r", "2"]));
    let counts: Vec<u64> = det["levels"].as_array().unwrap().iter().map(|l| l["points"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![3, 9]);
}

#[test]
fn incompatible_curves_fail_the_verdict() {
    let dir = setup();
    genjac(dir.path(), &["bundle", "c.txt", "-B", "3", "--out", "c.json"]);
    let out = genjac(dir.path(), &["reconstruct", "a.txt", "c.json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["result"]["outcome"], "NotFound");
}

#[test]
fn verify_suites() {
    let dir = setup();
    for suite in ["stab", "gen", "fixed", "weil", "unique"] {
        let out = genjac(dir.path(), &["verify", "--suite", suite, "a.txt", "-r", "2"]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
        assert_eq!(json(&out)["pass"], true, "{suite}");
    }
    let out = genjac(dir.path(), &["verify", "--suite", "canonical", "a.txt", "--against", "a.txt"]);
    assert_eq!(json(&out)["pass"], true);
    let out = genjac(dir.path(), &["verify", "--suite", "canonical", "a.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn elliptic_spec() {
    let dir = setup();
    let v = json(&genjac(dir.path(), &["group", "e.txt"]));
    assert_eq!(v["levels"][0]["order"], 16);
    assert_eq!(v["levels"][0]["order_formula"], 16);
    let out = genjac(dir.path(), &["lfun", "e.txt", "-B", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["euler==divisor_sum"], true);
    assert_eq!(genjac(dir.path(), &["bundle", "e.txt"]).status.code(), Some(2));
}

#[test]
fn error_records_and_exit_codes() {
    let dir = setup();
    std::fs::write(dir.path().join("bad.txt"), "q = 3\nmodulus = x^2\n").unwrap();
    let out = genjac(dir.path(), &["group", "bad.txt"]);
    assert_eq!(out.status.code(), Some(2));
    let rec: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(rec["error"], "HypothesisViolated");

    std::fs::write(dir.path().join("typo.txt"), "q = 3\nmodulos = x^3\n").unwrap();
    let out = genjac(dir.path(), &["group", "typo.txt"]);
    let rec: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(rec["error"], "Parse");

    assert_eq!(genjac(dir.path(), &["group", "a.txt", "-r", "3", "--budget", "10"]).status.code(), Some(3));
    assert_eq!(genjac(dir.path(), &["group", "a.txt", "-r", "0"]).status.code(), Some(2));
    assert_eq!(genjac(dir.path(), &["lfun", "a.txt", "-B", "2"]).status.code(), Some(2));
    assert_eq!(genjac(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(genjac(dir.path(), &["group", "missing.txt"]).status.code(), Some(2));
}
