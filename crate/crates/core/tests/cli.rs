use std::path::PathBuf;
use std::process::{Command, Output};

use tckit::report::{Status, VerificationReport};

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn cocycles_suite_has_121_degree_checks() {
    let out = scratch("cocycles.json");
    let run = verify(&[
        "cocycles",
        "--k-range",
        "-5..5",
        "--n-range",
        "-5..5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(0));
    let report: VerificationReport =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.suite, "cocycles");
    assert_eq!(report.checks_with_prefix("cocycles.degree[").count(), 121);
    assert!(report.checks.iter().all(|c| !c.citation.is_empty()));
    let ids: Vec<&String> = report.checks.iter().map(|c| &c.id).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn reports_are_byte_identical() {
    let a = scratch("all-a.json");
    let b = scratch("all-b.json");
    let first = verify(&["all", "--out", a.to_str().unwrap()]);
    let second = verify(&["all", "--out", b.to_str().unwrap()]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn so3_homology_passes() {
    let run = verify(&["so3-homology"]);
    assert_eq!(run.status.code(), Some(0));
    let text = String::from_utf8(run.stdout).unwrap();
    assert!(text.contains("PASS so3.h2"));
}

#[test]
fn surface_selector_runs_golden_comparison() {
    let run = verify(&["surface-ko", "--surface", "rp:3"]);
    assert_eq!(run.status.code(), Some(0));
    let text = String::from_utf8(run.stdout).unwrap();
    assert!(text.contains("PASS surface[rp:3].ko.golden"));
}

#[test]
fn failing_check_exits_one() {
    let out = scratch("char.json");
    let run = verify(&["char-classes", "--out", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(1));
    let report: VerificationReport =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let failing = report.check("char.splitting.e-times-l").unwrap();
    assert_eq!(failing.status, Status::Fail);
    assert_eq!(report.summary.failed, 2);
}

#[test]
fn bad_arguments_exit_two() {
    for args in [
        vec!["nonsense"],
        vec!["cocycles", "--k-range", "5..-5"],
        vec!["cocycles", "--n-range", "1..2000"],
        vec!["surface-ko", "--surface", "klein"],
        vec!["surface-ko", "--surface", "genus:8"],
        vec!["char-classes", "--degree-cap", "2"],
        vec![],
    ] {
        assert_eq!(verify(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn structured_report_has_fixed_fields() {
    let out = scratch("so3.json");
    verify(&["so3-homology", "--out", out.to_str().unwrap()]);
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let keys: Vec<&str> = value
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(keys, vec!["checks", "suite", "summary"]);
    let check = value["checks"][0].as_object().unwrap();
    for field in ["id", "citation", "status", "expected", "actual"] {
        assert!(check.contains_key(field), "{field}");
    }
}
