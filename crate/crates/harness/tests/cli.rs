use std::process::Command;

use wstar_harness::{run_suites, SuiteConfig, SuiteReport, SUITES};

fn wstar() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wstar"))
}

#[test]
fn list_names_every_suite() {
    let out = wstar().arg("--list").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for s in SUITES {
        assert!(text.lines().any(|l| l.starts_with(&format!("{s}/"))), "suite {s} missing from --list");
    }
}

#[test]
fn report_is_written_and_parses() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = wstar()
        .args(["--suite", "wstar", "--suite", "lattice", "--samples", "5", "--report"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let report: SuiteReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(report.passed);
    assert_eq!(report.config.samples, 5);
    assert!(report.properties.iter().all(|p| p.suite == "wstar" || p.suite == "lattice"));
    assert_eq!(report.total, report.properties.len());
}

#[test]
fn invalid_configuration_exits_with_two() {
    let out = wstar().args(["--dim", "3", "--rank", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = wstar().args(["--suite", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corrupted_tolerance_fails() {
    let out = wstar().args(["--suite", "wstar", "--samples", "3", "--tol-eq", "1e-300"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn runs_are_reproducible() {
    let cfg = SuiteConfig { samples: 4, suites: vec!["groupoid".into(), "bundle".into()], ..SuiteConfig::default() };
    let a = run_suites(&cfg).unwrap().without_timestamp().to_json();
    let b = run_suites(&cfg).unwrap().without_timestamp().to_json();
    assert_eq!(a, b);
    let records = |c: &SuiteConfig| serde_json::to_string(&run_suites(c).unwrap().properties).unwrap();
    let other = SuiteConfig { seed: cfg.seed + 1, ..cfg.clone() };
    assert_ne!(records(&cfg), records(&other));
}
