use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn qwz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwz"))
        .args(args)
        .env_remove("QWZ_PRECISION")
        .output()
        .expect("qwz runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/thm1_halfhalf22.json")
}

fn derive_to(dir: &Path, name: &str, family: &str, params: &str) -> (Output, PathBuf) {
    let path = dir.join(name);
    let o = qwz(&["derive", "--family", family, "--params", params, "--out", path.to_str().unwrap()]);
    (o, path)
}

#[test]
fn derive_then_certify_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let (o, path) = derive_to(dir.path(), "a.json", "quarter", "1/2,1/2,2,2");
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("residual   0"));
    let c = qwz(&["certify", path.to_str().unwrap()]);
    assert_eq!(code(&c), 0);
    let out = stdout(&c);
    assert!(out.contains("residual: 0"), "{}", out);
    assert!(out.contains("reserialization: identical"), "{}", out);
}

#[test]
fn derivation_is_deterministic_and_matches_the_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let (_, a) = derive_to(dir.path(), "a.json", "quarter", "1/2,1/2,2,2");
    let (_, b) = derive_to(dir.path(), "b.json", "quarter", "1/2,1/2,2,2");
    let a = fs::read(a).unwrap();
    assert_eq!(a, fs::read(b).unwrap());
    assert_eq!(a, fs::read(fixture()).unwrap());
}

#[test]
fn committed_fixture_certifies() {
    let o = qwz(&["certify", fixture().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("residual: 0\n"));
}

#[test]
fn degenerate_parameters_exit_2() {
    let o = qwz(&["derive", "--family", "quarter", "--params", "0,1,2,2"]);
    assert_eq!(code(&o), 2);
    let o = qwz(&["derive", "--family", "quarter", "--params", "1,1,1,1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn neg_quarter_example_derives() {
    let o = qwz(&["derive", "--family", "neg-quarter", "--params", "1,1,2,2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["family"], "NEG_QUARTER");
}

#[test]
fn schema_errors_exit_5() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"schema\": 1}").unwrap();
    assert_eq!(code(&qwz(&["certify", bad.to_str().unwrap()])), 5);
    fs::write(&bad, "not json").unwrap();
    assert_eq!(code(&qwz(&["certify", bad.to_str().unwrap()])), 5);
    let mut v: Value = serde_json::from_slice(&fs::read(fixture()).unwrap()).unwrap();
    v["extra"] = Value::from(1);
    fs::write(&bad, v.to_string()).unwrap();
    assert_eq!(code(&qwz(&["certify", bad.to_str().unwrap()])), 5);
}

#[test]
fn tampered_certificate_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_slice(&fs::read(fixture()).unwrap()).unwrap();
    v["certificate"]["rbar"] = Value::from("1");
    let path = dir.path().join("t.json");
    fs::write(&path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    assert_eq!(code(&qwz(&["certify", path.to_str().unwrap()])), 4);
}

#[test]
fn unknown_flags_and_inexact_input_are_rejected() {
    let o = qwz(&["derive", "--family", "quarter", "--params", "1,1,2,2", "--bogus"]);
    assert_ne!(code(&o), 0);
    let o = qwz(&["derive", "--family", "quarter", "--params", "0.5,1,2,2"]);
    assert_ne!(code(&o), 0);
    let o = qwz(&["derive", "--family", "nope", "--params", "1,1,2,2"]);
    assert_ne!(code(&o), 0);
    let o = qwz(&["catalog", "run", "--q", "1.5"]);
    assert_ne!(code(&o), 0);
}

#[test]
fn verify_accepts_decimal_q() {
    let o = qwz(&["verify", fixture().to_str().unwrap(), "--q", "1.25", "--strict", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert!(v["terms"]["lhs"].as_u64().unwrap() <= 1000);
}

#[test]
fn verify_inside_the_unit_disc_fails() {
    let o = qwz(&["verify", "--tag", "apery", "--q", "1/2"]);
    assert_ne!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("condition"));
}

#[test]
fn precision_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qwz"))
        .args(["verify", "--tag", "apery", "--q", "2", "--format", "json"])
        .env("QWZ_PRECISION", "30")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["digits"], 30);
    let v: Value = serde_json::from_str(&stdout(&qwz(&["verify", "--tag", "apery", "--q", "2", "--format", "json"]))).unwrap();
    assert_eq!(v["digits"], 60);
}

#[test]
fn convergence_table_is_printed() {
    let o = qwz(&["verify", "--tag", "zeilberger64", "--q", "5/4", "--convergence", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["convergence"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
}

#[test]
fn catalog_run_strict_passes() {
    let o = qwz(&["catalog", "run", "--q", "2", "--digits", "60", "--strict", "--jobs", "4"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    let ok = out.lines().filter(|l| l.starts_with("ok ")).count();
    assert!(ok >= 30, "{}", out);
}

#[test]
fn catalog_list_is_json_when_asked() {
    let v: Value = serde_json::from_str(&stdout(&qwz(&["catalog", "list", "--format", "json"]))).unwrap();
    let entries = v.as_array().unwrap();
    assert!(entries.len() >= 30);
    assert!(entries.iter().any(|e| e["tag"] == "apery" && e["params"] == "1,1,2,2"));
}

#[test]
fn apery_exports_in_bracket_notation() {
    let o = qwz(&["export", "--tag", "apery", "--format", "latex"]);
    assert_eq!(code(&o), 0);
    let tex = stdout(&o);
    assert!(tex.contains("{}_{3}\\phi_{2}\\!\\left[\\begin{matrix} q, q, q \\\\ q^{2}, q^{2} \\end{matrix}"), "{}", tex);
    assert!(tex.contains("\\frac{\\pi^{2}}{9} = \\sum_{n=0}^{\\infty} \\left(\\frac{1}{4}\\right)^{n} \\left[\\begin{matrix} 1 \\\\ \\frac{3}{2} \\end{matrix}\\right]_{n} \\frac{1}{n + 1}"), "{}", tex);
}

#[test]
fn limit_reports_the_target() {
    let o = qwz(&["limit", "zeilberger64", "--digits", "50", "--strict", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert!(v["target"].as_str().unwrap().starts_with("1.3159472534785811"));
}

#[test]
fn constants_audit_passes() {
    let o = qwz(&["constants", "--strict"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l.starts_with("pi ")));
}

#[test]
fn jobs_must_be_positive() {
    assert_ne!(code(&qwz(&["catalog", "run", "--jobs", "0", "--no-limits"])), 0);
}
