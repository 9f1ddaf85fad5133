//! End-to-end runs of the `equiosc` binary.

use std::f64::consts::LN_2;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_equiosc"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("problems").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn solve_minimax_from_bundled_file() {
    let f = fixture("example71.json");
    let out = run(&["solve", "--problem", f.to_str().unwrap(), "--mode", "minimax"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["tool"], "equiosc");
    assert_eq!(v["command"], "solve");
    assert_eq!(v["seed"], 0);
    assert!(v["config"]["tol_value"].is_number());
    let value = v["result"]["value"].as_f64().unwrap();
    assert!((value + 1.38629).abs() < 1e-5, "{value}");
    assert_eq!(v["result"]["certificate"], "Equioscillating");
}

#[test]
fn solve_equi_and_maximin() {
    let f = fixture("example71_piecewise.json");
    let out = run(&["solve", "--problem", f.to_str().unwrap(), "--mode", "equi", "--anchor", "0.25"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["result"]["value"].as_f64().unwrap() + LN_2).abs() < 1e-9);
    assert_eq!(v["seed"], 1);

    let out = run(&["equi", "--problem", f.to_str().unwrap(), "--anchor", "0.5833333333333334"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["--seed", "5", "solve", "--problem", f.to_str().unwrap(), "--mode", "maximin"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["seed"], 5);
    assert!((v["result"]["value"].as_f64().unwrap() + LN_2).abs() < 1e-4);
}

#[test]
fn usage_errors_exit_2() {
    let f = fixture("example71.json");
    let out = run(&["solve", "--problem", f.to_str().unwrap(), "--mode", "equi"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--anchor"));
    assert_eq!(run(&["solve", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
    let out = run(&["solve", "--problem", "/nonexistent.json", "--mode", "minimax"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_problem_files_report_the_reason() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"schema_version":1,"kernel":{"name":"log_sine"},"nu":[1,-1],"field":{"name":"zero"}}"#,
    )
    .unwrap();
    let out = run(&["solve", "--problem", path.to_str().unwrap(), "--mode", "minimax"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nu must be positive"));

    std::fs::write(
        &path,
        r#"{"schema_version":1,"kernel":{"name":"log_sine"},"nu":[1],"field":{"name":"zero","extra":1}}"#,
    )
    .unwrap();
    let out = run(&["solve", "--problem", path.to_str().unwrap(), "--mode", "minimax"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("field"));
}

#[test]
fn output_files_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let f = fixture("weighted3.json");
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = run(&[
            "--seed",
            "3",
            "--out",
            out.to_str().unwrap(),
            "solve",
            "--problem",
            f.to_str().unwrap(),
            "--mode",
            "minimax",
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn trace_and_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("mu.csv");
    let f = fixture("example71.json");
    let out = run(&[
        "trace-mu",
        "--problem",
        f.to_str().unwrap(),
        "--grid",
        "8",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["points"].as_array().unwrap().len(), 8);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("a,mu,y_1,y_2\n"));
    assert_eq!(text.lines().count(), 9);

    let out = run(&["oracle", "--problem", f.to_str().unwrap(), "--grid", "64"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["grid"], 64);
    let est = v["result"]["minimax_estimate"].as_f64().unwrap();
    assert!((est + 1.3862943611198906).abs() < 0.1);
}

#[test]
fn reproduce_commands_pass() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("lambda.csv");
    let out = run(&["reproduce", "example71", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["result"]["passed"], true);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("x,z,y1,y2,lambda,arc_gap\n"));
    assert_eq!(text.lines().count(), 101);

    let out = run(&["reproduce", "example72", "--alpha", "13.6"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["reproduce", "example54", "--lmax", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["reproduce", "example72", "--alpha", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn perturbation_check() {
    let f = fixture("weighted3.json");
    let out = run(&["check-perturbation", "--problem", f.to_str().unwrap(), "--trials", "40"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["passed"], true);
}

#[test]
fn thread_cap_is_honored() {
    let f = fixture("example71.json");
    let out = bin()
        .env("EQUIOSC_THREADS", "1")
        .args(["oracle", "--problem", f.to_str().unwrap(), "--grid", "32"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
