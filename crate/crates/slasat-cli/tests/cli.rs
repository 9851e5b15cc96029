//! End-to-end checks of the `slasat` binary: exit codes, report formats,
//! and the file-producing commands.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use slasat::solver::{SolveReport, SolverKind};
use slasat::verify::{ComplianceReport, WindowReport};

fn slasat_bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slasat"))
        .args(args)
        .output()
        .expect("binary launches")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("not signal-terminated")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn write_temp(dir: &tempfile::TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, content).expect("temp write");
    path
}

#[test]
fn verify_compliant_trace_exits_zero() {
    let out = slasat_bin(&[
        "verify",
        &fixture("nimbus.sla"),
        "--trace",
        &fixture("traces/nimbus_ok.csv"),
        "--at",
        "0",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("overall: SATISFIED"));
}

#[test]
fn verify_breaching_trace_exits_one() {
    let out = slasat_bin(&[
        "verify",
        &fixture("nimbus.sla"),
        "--trace",
        &fixture("traces/nimbus_breach.csv"),
        "--at",
        "0",
    ]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("overall: VIOLATED"));
    assert!(text.contains("latency"));
}

#[test]
fn verify_with_absent_indicator_exits_two() {
    let out = slasat_bin(&[
        "verify",
        &fixture("nimbus.sla"),
        "--trace",
        &fixture("traces/nimbus_missing.csv"),
        "--at",
        "0",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).is_empty(), "no partial report on error");
    assert!(stderr(&out).contains("latency"));
}

#[test]
fn verify_rejects_at_combined_with_window() {
    let out = slasat_bin(&[
        "verify",
        &fixture("nimbus.sla"),
        "--trace",
        &fixture("traces/nimbus_ok.csv"),
        "--at",
        "0",
        "--window",
        "0:5",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_defaults_to_full_trace_extent() {
    let out = slasat_bin(&[
        "verify",
        &fixture("nimbus.sla"),
        "--trace",
        &fixture("traces/nimbus_ok.csv"),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("window [0, 0] step 1"));
}

#[test]
fn structured_instant_report_round_trips() {
    let out = slasat_bin(&[
        "verify",
        &fixture("nimbus.sla"),
        "--trace",
        &fixture("traces/nimbus_ok.csv"),
        "--at",
        "0",
        "--format",
        "structured",
    ]);
    assert_eq!(code(&out), 0);
    let report: ComplianceReport = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report.sla_name, "nimbus");
    assert_eq!(report.timestamp, 0);
    assert!(report.overall);
    assert_eq!(report.verdicts.len(), 2);
}

#[test]
fn structured_window_report_round_trips() {
    let out = slasat_bin(&[
        "verify",
        &fixture("nimbus.sla"),
        "--trace",
        &fixture("traces/nimbus_degraded.csv"),
        "--window",
        "0:200",
        "--step",
        "10",
        "--format",
        "structured",
    ]);
    assert_eq!(code(&out), 1);
    let report: WindowReport = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report.total_penalty, 100);
    assert_eq!(report.steps.len(), 21);
    let latency = &report.clauses[1];
    assert_eq!(latency.clause_id, "latency");
    assert_eq!(latency.violations.len(), 1);
    assert_eq!(latency.violations[0].elapsed, 120);
}

#[test]
fn solve_satisfiable_exits_zero_with_requirements() {
    let out = slasat_bin(&["solve", &fixture("nimbus.sla")]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("result: SAT"));
    assert!(text.contains("solver: two_sat"));
    assert!(text.contains("nimbus.uptime = true"));
    assert!(text.contains("nimbus.latency = true"));
}

#[test]
fn solve_structured_report_round_trips() {
    let out = slasat_bin(&[
        "solve",
        &fixture("nimbus.sla"),
        &fixture("orion.sla"),
        "--format",
        "structured",
    ]);
    assert_eq!(code(&out), 0);
    let report: SolveReport = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report.solver_used, SolverKind::TwoSat);
    assert_eq!(report.clause_requirements.len(), 5);
}

#[test]
fn solve_contradiction_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(
        &dir,
        "paradox.sla",
        r#"sla "paradox" {
  clauses {
    up: indicator(bool, "up") objective(set(true)) evaluator(membership) penalty(none);
  }
  terms: up AND NOT up;
}
"#,
    );
    let out = slasat_bin(&["solve", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("result: UNSAT"));
}

#[test]
fn solve_honors_the_decision_limit() {
    // NOT over a conjunction is not CNF shape, so this takes the general
    // path, and after propagation a genuine branch remains
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(
        &dir,
        "branchy.sla",
        r#"sla "branchy" {
  clauses {
    a: indicator(bool, "ma") objective(set(true)) evaluator(membership) penalty(none);
    b: indicator(bool, "mb") objective(set(true)) evaluator(membership) penalty(none);
  }
  terms: NOT (a AND b) AND (a OR b);
}
"#,
    );
    let aborted = slasat_bin(&["solve", path.to_str().unwrap(), "--decision-limit", "0"]);
    assert_eq!(code(&aborted), 3);
    assert!(stdout(&aborted).contains("ABORTED"));

    let solved = slasat_bin(&["solve", path.to_str().unwrap()]);
    assert_eq!(code(&solved), 0);
    assert!(stdout(&solved).contains("solver: dpll"));
}

#[test]
fn aggregate_writes_a_reparseable_sla() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("fleet.sla");
    let out = slasat_bin(&[
        "aggregate",
        &fixture("nimbus.sla"),
        &fixture("orion.sla"),
        "--name",
        "fleet",
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));

    let text = std::fs::read_to_string(&out_path).unwrap();
    let sla = slasat::dsl::parse_sla(&text).expect("aggregate output parses");
    assert_eq!(sla.name, "fleet");
    assert_eq!(sla.clauses.len(), 5);
    assert!(sla.clauses.iter().any(|c| c.id == "nimbus.uptime"));
    assert!(sla.clauses.iter().any(|c| c.id == "orion.staleness"));
}

#[test]
fn aggregate_rejects_duplicate_names() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("out.sla");
    let out = slasat_bin(&[
        "aggregate",
        &fixture("nimbus.sla"),
        &fixture("nimbus.sla"),
        "--name",
        "twice",
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(!out_path.exists(), "no output file on error");
}

#[test]
fn to_sat_exports_named_dimacs() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("nimbus.cnf");
    let out = slasat_bin(&[
        "to-sat",
        &fixture("nimbus.sla"),
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));

    let text = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(
        text,
        "c var 1 = uptime\nc var 2 = latency\np cnf 2 2\n1 0\n2 0\n"
    );
}

#[test]
fn from_sat_rebuilds_a_symbolic_sla() {
    let dir = tempfile::tempdir().unwrap();
    let cnf_path = write_temp(&dir, "in.cnf", "p cnf 2 2\n1 2 0\n-1 2 0\n");
    let out_path = dir.path().join("out.sla");
    let out = slasat_bin(&[
        "from-sat",
        cnf_path.to_str().unwrap(),
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));

    let text = std::fs::read_to_string(&out_path).unwrap();
    let sla = slasat::dsl::parse_sla(&text).expect("lifted output parses");
    assert_eq!(sla.clauses.len(), 2);
    assert!(sla.clauses.iter().all(|c| c.is_symbolic()));
}

#[test]
fn sat_conversion_round_trip_preserves_satisfiability_shape() {
    let dir = tempfile::tempdir().unwrap();
    let cnf_path = dir.path().join("step1.cnf");
    let sla_path = dir.path().join("step2.sla");

    let out = slasat_bin(&[
        "to-sat",
        &fixture("orion.sla"),
        "-o",
        cnf_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let out = slasat_bin(&[
        "from-sat",
        cnf_path.to_str().unwrap(),
        "-o",
        sla_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);

    let out = slasat_bin(&["solve", sla_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "orion is satisfiable, so is its round trip");
}

#[test]
fn validate_reports_parse_errors_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_temp(&dir, "bad.sla", "sla \"x\" {\n  clauses {\n}\n");
    let out = slasat_bin(&["validate", &fixture("nimbus.sla"), bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("nimbus.sla: ok"), "good files still reported");
    assert!(stderr(&out).contains("line"));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = slasat_bin(&["solve", "no-such-file.sla"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("no-such-file.sla"));
}
