//! Plain-text views of the library's report types. Ordering mirrors the
//! reports themselves (clauses in definition order), so output is stable
//! across runs.

use std::fmt::Write;

use slasat::solver::{AbortReason, SolveReport, SolveResult};
use slasat::verify::{ComplianceReport, WindowReport};

pub fn compliance_text(report: &ComplianceReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "sla {} at t={}", report.sla_name, report.timestamp);
    for v in &report.verdicts {
        let state = if v.satisfied { "satisfied" } else { "violated" };
        let _ = writeln!(out, "  {:<24} {state}", v.clause_id);
    }
    let overall = if report.overall { "SATISFIED" } else { "VIOLATED" };
    let _ = writeln!(out, "overall: {overall}");
    out
}

pub fn window_text(report: &WindowReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "sla {} window [{}, {}] step {}",
        report.sla_name, report.window_start, report.window_end, report.step
    );
    for clause in &report.clauses {
        let _ = writeln!(out, "  {:<24} penalty {}", clause.clause_id, clause.penalty);
        for violation in &clause.violations {
            let _ = writeln!(
                out,
                "    violated [{}, {}] elapsed {}",
                violation.start, violation.end, violation.elapsed
            );
        }
    }
    let compliant = report.steps.iter().filter(|s| s.overall).count();
    let _ = writeln!(
        out,
        "steps evaluated: {}, compliant: {compliant}",
        report.steps.len()
    );
    let _ = writeln!(out, "total penalty: {}", report.total_penalty);
    let overall = if compliant == report.steps.len() {
        "SATISFIED"
    } else {
        "VIOLATED"
    };
    let _ = writeln!(out, "overall: {overall}");
    out
}

pub fn solve_text(report: &SolveReport) -> String {
    let mut out = String::new();
    match &report.result {
        SolveResult::Sat(_) => {
            let _ = writeln!(out, "result: SAT");
        }
        SolveResult::Unsat => {
            let _ = writeln!(out, "result: UNSAT");
        }
        SolveResult::Aborted(AbortReason::DecisionLimit) => {
            let _ = writeln!(out, "result: ABORTED (decision limit reached)");
        }
    }
    let _ = writeln!(out, "solver: {}", report.solver_used);
    if !report.clause_requirements.is_empty() {
        let _ = writeln!(out, "requirements:");
        for req in &report.clause_requirements {
            let _ = writeln!(out, "  {} = {}", req.clause_id, req.required);
        }
    }
    let _ = writeln!(
        out,
        "decisions: {}, propagations: {}, components: {}",
        report.stats.decisions, report.stats.propagations, report.stats.scc_count
    );
    out
}
