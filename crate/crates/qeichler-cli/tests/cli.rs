//! End-to-end tests of the binary: exit codes, file formats, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qeichler"))
}

fn write_spec(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("qeichler-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn eta24_path() -> PathBuf {
    write_spec(
        "eta24.json",
        r#"{ "kind": "eta_quotient", "factors": [[24,1]], "weight": "1/2", "level": 576 }"#,
    )
}

fn eta8_path() -> PathBuf {
    write_spec(
        "eta8.json",
        r#"{ "kind": "eta_quotient", "factors": [[8,3]], "weight": "3/2", "level": 64 }"#,
    )
}

fn zero_path() -> PathBuf {
    write_spec(
        "zero.json",
        r#"{ "kind": "raw", "coefficients": [], "weight": "3/2", "level": 64 }"#,
    )
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn coeffs_eta24_exact_rows() {
    let out = bin()
        .args(["coeffs", "--form"])
        .arg(eta24_path())
        .args(["--terms", "30"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,re,im,err");
    assert_eq!(lines[1], "1e0,1e0,0e0,0e0"); // a(1) = 1
    assert_eq!(lines[25], "2.5e1,-1e0,0e0,0e0"); // a(25) = -1
    assert_eq!(lines[4], "4e0,0e0,0e0,0e0"); // a(4) = 0
}

#[test]
fn coeffs_zero_form_all_zero() {
    let out = bin()
        .args(["coeffs", "--form"])
        .arg(zero_path())
        .args(["--terms", "10"])
        .output()
        .unwrap();
    assert!(out.status.success());
    for line in stdout(&out).lines().skip(1) {
        let re = line.split(',').nth(1).unwrap();
        assert_eq!(re, "0e0");
    }
}

#[test]
fn malformed_spec_exits_2_with_diagnostics() {
    let bad = write_spec("bad.json", r#"{ "kind": "eta_quotient", "weight": "1/2" }"#);
    let out = bin().args(["coeffs", "--form"]).arg(bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line"), "missing diagnostics: {err}");
}

#[test]
fn quantum_values_and_empty_list() {
    let out = bin()
        .args(["quantum", "--form"])
        .arg(eta8_path())
        .args(["--at", "0/1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    let re: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((re - 0.5).abs() < 1e-8, "Q(0) = {re}");

    // empty point list: header only, success
    let out = bin().args(["quantum", "--form"]).arg(eta8_path()).output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), "x,re,im,err\n");
}

#[test]
fn quantum_rejects_zero_denominator() {
    let out = bin()
        .args(["quantum", "--form"])
        .arg(eta8_path())
        .args(["--at", "1/0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tolerance_contract() {
    let out = bin()
        .args(["lvalue", "--form"])
        .arg(eta8_path())
        .args(["--s", "2,0", "--tol", "1e-15"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_vanishing_passes_and_unknown_suite_is_usage_error() {
    let out = bin()
        .args(["verify", "--form"])
        .arg(eta8_path())
        .args(["--suite", "vanishing"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("verdict: PASS"));

    let out = bin()
        .args(["verify", "--form"])
        .arg(eta8_path())
        .args(["--suite", "no-such-suite"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_all_on_zero_form_passes() {
    let out = bin()
        .args(["verify", "--form"])
        .arg(zero_path())
        .args(["--suite", "all", "--format", "txt"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("verdict: PASS"));
}

#[test]
fn cocycle_scan_csv_and_determinism() {
    let run = || {
        bin()
            .args(["cocycle", "--form"])
            .arg(eta8_path())
            .args(["--gamma", "1,0,64,1", "--grid", "0.5:1.5:9", "--tol", "1e-8"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "byte-identical output for identical jobs");
    let text = stdout(&a);
    assert_eq!(text.lines().next().unwrap(), "x,re,im,err");
    assert_eq!(text.lines().count(), 10); // header + 9 samples
}

#[test]
fn strange_function_values() {
    let out = bin().args(["strange", "--at", "0/1"]).output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().nth(1).unwrap().starts_with("0e0,1e0,"));

    let out = bin().args(["strange", "--at", "1/2"]).output().unwrap();
    let text = stdout(&out);
    let re: f64 = text.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(re, 3.0);
}

#[test]
fn eval_and_asymptotic_run() {
    let out = bin()
        .args(["eval", "--form"])
        .arg(eta24_path())
        .args(["--tau", "0.0,1.0", "--format", "txt"])
        .output()
        .unwrap();
    assert!(out.status.success());

    let out = bin()
        .args(["asymptotic", "--form"])
        .arg(eta8_path())
        .args(["--at", "1/2", "--terms", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    // beta(0) = Q(1/2) = -1/2 for this fixture
    let text = stdout(&out);
    let re: f64 = text.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((re + 0.5).abs() < 1e-8, "beta(0) = {re}");
}
