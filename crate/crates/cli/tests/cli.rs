use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const FOUR_POINTS: &str = "field fp default\nambient 2\npoints\n0 -1 1\n0 0 1\n0 1 1\n1 0 1\nend\n";
const FOUR_RING: &str = "field q\nvars x0 x1 x2\norder grevlex\ngens\nx0*x1\nx0*(x0-x2)\nx1*(x1-x2)*(x1+x2)\nend\n";
const GENERIC: &str = "field fp default\nambient 2\npoints\n1 0 0\n0 1 0\n0 0 1\n1 1 1\nend\n";
const RANDOM: &str = "field fp default\nambient 2\npoints\n17 4021 1\n9 -300 1\n1200 5 1\n-77 31 1\n2 2 1\nend\n";
const CI: &str = "field fp 101\nvars x y z\ngens\nx^2 - y*z\ny^3 + z^3 - x*y*z\nend\n";

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn write(&self, name: &str, body: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }
}

fn run(args: &[&str], file: &PathBuf) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corecalc"))
        .args(args)
        .arg(file)
        .env_remove("CORECALC_SEED")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
}

#[test]
fn invariants_of_four_points() {
    let f = Files::new();
    let out = run(&["--format", "json", "invariants"], &f.write("four.ring", FOUR_RING));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["a"].as_i64(), v["d"].as_i64(), v["e"].as_i64()), (Some(1), Some(1), Some(4)));
    assert_eq!(v["type"].as_i64(), Some(2));
}

#[test]
fn plane_cubic_is_gorenstein() {
    let f = Files::new();
    let cubic = f.write("cubic.ring", "field q\nvars x y\ngens\nx^3 + y^3 - 2*x*y^2\nend\n");
    let v = json(&run(&["--format", "json", "invariants"], &cubic));
    assert_eq!((v["a"].as_i64(), v["type"].as_i64()), (Some(1), Some(1)));
}

#[test]
fn non_cohen_macaulay_gives_partial_report() {
    let f = Files::new();
    let skew = f.write("skew.ring", "field q\nvars x y z w\ngens\nx*z\nx*w\ny*z\ny*w\nend\n");
    let out = run(&["--format", "json", "invariants"], &skew);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["is_cm"], Value::Bool(false));
    assert!(v["a"].is_null());
}

#[test]
fn core_both_methods() {
    let f = Files::new();
    let out = run(&["--format", "json", "core", "--method", "both"], &f.write("four.ring", FOUR_RING));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["agreement"], Value::Bool(true));
    assert_eq!(strings(&v["core"]), ["x0*x1", "x0*x2", "x0^2", "x1*x2^2", "x1^2*x2", "x1^3", "x2^3"]);
    let poly = f.write("poly.ring", "field q\nvars x y\ngens\nend\n");
    let v = json(&run(&["--format", "json", "core"], &poly));
    assert_eq!(strings(&v["core"]), ["x", "y"]);
}

#[test]
fn cayley_bacharach_verdicts() {
    let f = Files::new();
    let four = f.write("four.pts", FOUR_POINTS);
    let out = Command::new(env!("CARGO_BIN_EXE_corecalc")).args(["--format", "json", "points"]).arg(&four).arg("cb").output().unwrap();
    let v = json(&out);
    assert_eq!(v["is_cb"], Value::Bool(false));
    assert_eq!(v["core_is_power"], Value::Bool(false));
    let generic = f.write("generic.pts", GENERIC);
    let out = Command::new(env!("CARGO_BIN_EXE_corecalc")).args(["--format", "json", "points"]).arg(&generic).arg("cb").output().unwrap();
    let v = json(&out);
    assert_eq!((v["is_cb"].as_bool(), v["core_is_power"].as_bool(), v["agree"].as_bool()), (Some(true), Some(true), Some(true)));
}

#[test]
fn linear_separators_on_the_line() {
    let f = Files::new();
    let two = f.write("two.pts", "field q\nambient 1\npoints\n1 0\n0 1\nend\n");
    let out = Command::new(env!("CARGO_BIN_EXE_corecalc")).args(["--format", "json", "points"]).arg(&two).arg("separators").output().unwrap();
    let v = json(&out);
    assert_eq!(v["degrees"], serde_json::json!([1, 1]));
}

#[test]
fn verify_suites() {
    let f = Files::new();
    let four = f.write("four.pts", FOUR_POINTS);
    let out = run(&["verify", "--suite", "colon-structure"], &four);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("PASS K height zero"));
    let ci = f.write("ci.ring", CI);
    assert_eq!(run(&["verify", "--suite", "thm-omega"], &ci).status.code(), Some(0));
    let random = f.write("random.pts", RANDOM);
    assert_eq!(run(&["--seed", "7", "verify", "--suite", "core-vs-oracle"], &random).status.code(), Some(0));
}

#[test]
fn deterministic_json() {
    let f = Files::new();
    let random = f.write("random.pts", RANDOM);
    let first = run(&["--seed", "3", "--format", "json", "verify", "--suite", "local"], &random);
    let second = Command::new(env!("CARGO_BIN_EXE_corecalc"))
        .args(["--format", "json", "verify", "--suite", "local"])
        .arg(&random)
        .env("CORECALC_SEED", "3")
        .output()
        .unwrap();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn input_errors_exit_with_two() {
    let f = Files::new();
    let dup = f.write("dup.pts", "field q\nambient 1\npoints\n1 2\n2 4\nend\n");
    let out = Command::new(env!("CARGO_BIN_EXE_corecalc")).arg("points").arg(&dup).arg("hf").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(run(&["invariants"], &f.write("bad.ring", "field q\nvars x\ngens\nx +\nend\n")).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"], &f.write("four.pts", FOUR_POINTS)).status.code(), Some(2));
    assert_eq!(run(&["invariants"], &f.0.path().join("missing.ring")).status.code(), Some(2));
}
