use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_normattain"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

struct Fixture {
    _dir: tempfile::TempDir,
    square: String,
    cube: String,
    plane: String,
    root: PathBuf,
}

fn fixture() -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().to_path_buf();
    let s = |name, text| write(&root, name, text).to_str().unwrap().to_string();
    Fixture {
        square: s("square.json", r#"{"dim":2,"norm":{"type":"lp","p":"inf"}}"#),
        cube: s("cube.json", r#"{"dim":3,"norm":{"type":"polytope-facets","facets":[[1,0,0],[-1,0,0],[0,1,0],[0,-1,0],[0,0,1],[0,0,-1]]}}"#),
        plane: s("plane.json", r#"{"dim":2,"norm":{"type":"lp","p":2}}"#),
        root,
        _dir: dir,
    }
}

#[test]
fn opnorm_of_square_to_plane() {
    let fx = fixture();
    let out = run(&["opnorm", "--space", &fx.square, "--codomain", &fx.plane, "--matrix", "1,0.5;0,0.5"]);
    assert!(out.status.success());
    let v = json(&out);
    assert!((v["norm"].as_f64().unwrap() - 2.5f64.sqrt()).abs() < 1e-12);
    assert_eq!(v["exact"], true);
}

#[test]
fn operator_file_round_trips_through_attains() {
    let fx = fixture();
    let op = format!(
        r#"{{"matrix":[[1,0],[0,1]],"domain":{},"codomain":{}}}"#,
        std::fs::read_to_string(&fx.square).unwrap(),
        std::fs::read_to_string(&fx.plane).unwrap()
    );
    let p = write(&fx.root, "op.json", &op);
    let out = run(&["attains", "--operator", p.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["attained"], true);
}

#[test]
fn mate_check_and_find() {
    let fx = fixture();
    let out = run(&["mate", "check", "--space", &fx.square, "--f", "0.5,0.5", "--g", "0.5,-0.5"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["is_mate"], true);
    let out = run(&["mate", "find", "--space", &fx.square, "--f", "1,0"]);
    assert_eq!(json(&out)["exists"], false);
}

#[test]
fn dependent_pair_is_a_domain_error() {
    let fx = fixture();
    let out = run(&["mate", "check", "--space", &fx.square, "--f", "1,0", "--g", "-0.5,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dependent"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    let fx = fixture();
    let out = run(&["mate", "find", "--space", &fx.square, "--f", "1,x"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn numerical_errors_exit_three() {
    let fx = fixture();
    let out = run(&["--vertex-budget", "4", "mate", "find", "--space", &fx.cube, "--f", "1,0,0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn construct_writes_trace_and_json_out() {
    let fx = fixture();
    let trace = fx.root.join("trace.json");
    let report = fx.root.join("op.json");
    let out = run(&[
        "construct", "theo2", "--space", &fx.cube, "--f1", "1,0,0", "--f2", "0,1,0", "--codomain", &fx.plane,
        "--trace-out", trace.to_str().unwrap(), "--json-out", report.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let t: Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(t["case"], "nonsmooth");
    assert_eq!(t["checks"]["rank"], 2);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(written, json(&out));
}

#[test]
fn gallery_segment_verdicts() {
    let out = run(&["gallery", "run", "segment", "--n", "256"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["model"], "segment");
    let verdicts: Vec<bool> = v["verdicts"].as_array().unwrap().iter().map(|x| x["attains"].as_bool().unwrap()).collect();
    assert_eq!(verdicts, vec![false, true, true]);
}

#[test]
fn gallery_dense_ball_defaults() {
    let out = run(&["gallery", "run", "dense-ball", "--n", "128", "--seed", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    let verdicts: Vec<bool> = v["verdicts"].as_array().unwrap().iter().map(|x| x["attains"].as_bool().unwrap()).collect();
    assert_eq!(verdicts, vec![true, false]);
}

#[test]
fn lomonosov_check_and_scan() {
    let fx = fixture();
    let mu = write(&fx.root, "mu.json", r#"{"atoms":[[0.0,1.0]],"weights":[1.0]}"#);
    let out = run(&["lomonosov", "check", "--b", "1,1", "--mu", mu.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["support"]["holds"], false);

    let a = run(&["lomonosov", "scan", "--degree", "4", "--budget", "30", "--seed", "5"]);
    let b = run(&["lomonosov", "scan", "--degree", "4", "--budget", "30", "--seed", "5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["evaluated"], 30);
    let bad = run(&["lomonosov", "scan", "--budget", "0"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn invalid_descriptor_is_a_domain_error() {
    let fx = fixture();
    let p = write(&fx.root, "bad.json", r#"{"dim":2,"norm":{"type":"polytope-vertices","vertices":[[1,0],[-1,0]]}}"#);
    let out = run(&["mate", "find", "--space", p.to_str().unwrap(), "--f", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest"]);
    let log = String::from_utf8_lossy(&out.stderr);
    assert!(out.status.success(), "{log}");
    assert_eq!(log.lines().filter(|l| l.starts_with("criterion")).count(), 10);
    assert_eq!(json(&out)["passed"], true);
}
