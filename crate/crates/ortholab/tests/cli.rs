use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ortholab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ortholab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_at(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn strip_runtime(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("runtime_ms");
            m.values_mut().for_each(strip_runtime);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_runtime),
        _ => {}
    }
}

#[test]
fn ortho_verify_hermite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("o.json");
    let out = ortholab(&[
        "ortho-verify",
        "--family",
        "hermite",
        "--theta",
        "2",
        "--kmax",
        "4",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_at(&json);
    assert_eq!(doc["command"], "ortho-verify");
    assert_eq!(doc["reports"].as_array().unwrap().len(), 25);
    assert_eq!(doc["summary"]["pass_count"], 25);
    assert_eq!(doc["summary"]["fail_count"], 0);
    assert!(doc["tool_version"].is_string());
    let k22 = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["name"] == "orthogonality(2,2)")
        .unwrap();
    let expected = k22["expected"]["re"].as_f64().unwrap();
    assert!((expected - 32.0 * std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn ellipse_ortho_writes_csv_table() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("e.csv");
    let json = dir.path().join("e.json");
    let out = ortholab(&[
        "ellipse-ortho",
        "--theta",
        "2",
        "--kmax",
        "10",
        "--json",
        json.to_str().unwrap(),
        "--csv",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_path(&csv_path).unwrap();
    assert!(reader.headers().unwrap().iter().any(|h| h == "rel_err"));
    assert_eq!(reader.records().count(), 121);
}

#[test]
fn summability_threshold_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("s.json");
    let out = ortholab(&[
        "summability",
        "--family",
        "laguerre",
        "--nu",
        "0.5",
        "--gen-t",
        "0.5",
        "--theta-grid",
        "3.5,3.9,4.1",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_at(&json);
    let verdicts: Vec<&str> = doc["details"]["thetas"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["verdict"].as_str().unwrap())
        .collect();
    assert_eq!(verdicts, ["converged", "converged", "diverging"]);
    let radius = doc["details"]["radius"].as_f64().unwrap();
    assert!((radius - 4.0).abs() < 0.2, "{radius}");
}

#[test]
fn failing_checks_exit_one() {
    // an unattainable diagonal tolerance fails the diagonal, not the rest
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("f.json");
    let out = ortholab(&[
        "ortho-verify",
        "--family",
        "hermite",
        "--kmax",
        "2",
        "--diag-tol",
        "1e-30",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json_at(&json);
    let (pass, fail) = (
        doc["summary"]["pass_count"].as_u64().unwrap(),
        doc["summary"]["fail_count"].as_u64().unwrap(),
    );
    assert!(pass >= 6 && fail >= 1 && pass + fail == 9, "{pass} {fail}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ortholab(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(ortholab(&["ortho-verify"]).status.code(), Some(2));
    assert_eq!(
        ortholab(&["ellipse-ortho", "--theta", "0.5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ortholab(&["ellipse-ortho", "--nodes", "100"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ortholab(&["full-suite", "--criteria", "13"]).status.code(),
        Some(2)
    );
}

#[test]
fn unwritable_output_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("missing").join("x.json");
    let out = ortholab(&["ellipse-ortho", "--json", json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let p = dir.path().join(name);
        ortholab(&[
            "kernel-check",
            "--kernel",
            "bailey",
            "--points",
            "5",
            "--json",
            p.to_str().unwrap(),
        ]);
        let mut v = json_at(&p);
        v["config"]["out"] = Value::Null;
        strip_runtime(&mut v);
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn full_suite_subset() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("suite.json");
    let out = ortholab(&[
        "full-suite",
        "--criteria",
        "6,11",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        stdout.lines().filter(|l| l.starts_with("[PASS]")).count(),
        2
    );
    let doc = json_at(&json);
    assert_eq!(doc["details"].as_array().unwrap().len(), 2);
}

#[test]
fn thread_cap_is_accepted() {
    let out = Command::new(env!("CARGO_BIN_EXE_ortholab"))
        .env("ORTHOLAB_THREADS", "1")
        .args(["kernel-check", "--kernel", "mehler", "--points", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["summary"]["pass_count"], 3);
}
