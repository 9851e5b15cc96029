//! Compliance verification: bind indicator traces to instants, evaluate an
//! SLA's clauses against a binding, and account penalties over a window.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Clause, IndicatorValue, Sla};

/// Time-stamped indicator samples, one ascending series per metric name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MetricTrace {
    series: BTreeMap<String, Vec<(u64, IndicatorValue)>>,
}

impl MetricTrace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a sample, keeping the series sorted by timestamp.
    ///
    /// Rejects a second sample at the same instant and values whose kind
    /// disagrees with the indicator's existing samples.
    pub fn insert(&mut self, indicator: &str, t: u64, value: IndicatorValue) -> Result<()> {
        let series = self.series.entry(indicator.to_owned()).or_default();
        if let Some((_, first)) = series.first() {
            if first.kind() != value.kind() {
                return Err(Error::TraceKindConflict {
                    indicator: indicator.to_owned(),
                });
            }
        }
        let pos = series.partition_point(|(ts, _)| *ts < t);
        if series.get(pos).is_some_and(|(ts, _)| *ts == t) {
            return Err(Error::DuplicateSample {
                indicator: indicator.to_owned(),
                t,
            });
        }
        series.insert(pos, (t, value));
        Ok(())
    }

    pub fn indicators(&self) -> impl Iterator<Item = &str> {
        self.series.keys().map(String::as_str)
    }

    pub fn samples(&self, indicator: &str) -> Option<&[(u64, IndicatorValue)]> {
        self.series.get(indicator).map(Vec::as_slice)
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    /// Latest sample for `indicator` at or before `t`.
    pub fn latest_at(&self, indicator: &str, t: u64) -> Option<IndicatorValue> {
        let series = self.series.get(indicator)?;
        let pos = series.partition_point(|(ts, _)| *ts <= t);
        pos.checked_sub(1).map(|i| series[i].1)
    }

    /// Earliest and latest timestamps across all series.
    pub fn extent(&self) -> Option<(u64, u64)> {
        let mut extent: Option<(u64, u64)> = None;
        for series in self.series.values() {
            let (Some((first, _)), Some((last, _))) = (series.first(), series.last()) else {
                continue;
            };
            extent = Some(match extent {
                None => (*first, *last),
                Some((lo, hi)) => (lo.min(*first), hi.max(*last)),
            });
        }
        extent
    }
}

/// A snapshot of indicator values at one instant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binding {
    pub timestamp: u64,
    values: BTreeMap<String, IndicatorValue>,
}

impl Binding {
    pub fn at(timestamp: u64) -> Self {
        Self {
            timestamp,
            values: BTreeMap::new(),
        }
    }

    pub fn with(mut self, indicator: impl Into<String>, value: IndicatorValue) -> Self {
        self.values.insert(indicator.into(), value);
        self
    }

    pub fn set(&mut self, indicator: impl Into<String>, value: IndicatorValue) {
        self.values.insert(indicator.into(), value);
    }

    pub fn get(&self, indicator: &str) -> Option<&IndicatorValue> {
        self.values.get(indicator)
    }

    pub fn contains(&self, indicator: &str) -> bool {
        self.values.contains_key(indicator)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &IndicatorValue)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Restriction to the indicators named by `sla`'s clauses.
    pub fn restricted_to(&self, sla: &Sla) -> Binding {
        let mut out = Binding::at(self.timestamp);
        for clause in &sla.clauses {
            if let Some(name) = clause.metric_name() {
                if let Some(value) = self.values.get(name) {
                    out.set(name, *value);
                }
            }
        }
        out
    }
}

/// Sample-and-hold snapshot of `trace` at `t`: for each indicator, the
/// latest sample at or before `t`. Indicators with no such sample are
/// simply absent.
pub fn bind(trace: &MetricTrace, t: u64) -> Binding {
    let mut binding = Binding::at(t);
    for indicator in trace.indicators() {
        if let Some(value) = trace.latest_at(indicator, t) {
            binding.set(indicator, value);
        }
    }
    binding
}

/// Verdict for one clause at one instant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseVerdict {
    pub clause_id: String,
    pub satisfied: bool,
}

/// Point-in-time compliance report for one SLA.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplianceReport {
    pub sla_name: String,
    pub timestamp: u64,
    /// Verdicts for every referenced clause, in definition order.
    pub verdicts: Vec<ClauseVerdict>,
    pub overall: bool,
    pub missing_indicators: Vec<String>,
}

/// Instrumentation counters for a verification run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyStats {
    /// Clause evaluator invocations; one per distinct referenced clause.
    pub clause_evaluations: u64,
}

/// A maximal run of consecutive violating steps for one clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationInterval {
    /// First violating step.
    pub start: u64,
    /// Last violating step.
    pub end: u64,
    /// Violation duration; each violating step covers one step of wall time.
    pub elapsed: u64,
}

/// Violations and penalty accrued by one clause over a window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseWindowReport {
    pub clause_id: String,
    pub violations: Vec<ViolationInterval>,
    pub penalty: i64,
}

/// Overall verdict at a single evaluation step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepVerdict {
    pub t: u64,
    pub overall: bool,
}

/// Windowed compliance report with violation intervals and penalties.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowReport {
    pub sla_name: String,
    pub window_start: u64,
    pub window_end: u64,
    pub step: u64,
    /// Per-clause accounting, in definition order.
    pub clauses: Vec<ClauseWindowReport>,
    pub total_penalty: i64,
    pub steps: Vec<StepVerdict>,
}

/// Referenced clauses in definition order, with resolution errors surfaced.
fn referenced_clauses(sla: &Sla) -> Result<Vec<&Clause>> {
    let positions = sla.clause_positions();
    let mut refs = sla.terms.referenced_ids();
    for id in &refs {
        if !positions.contains_key(id) {
            return Err(Error::UnresolvedClauseRef {
                clause_id: (*id).to_owned(),
            });
        }
    }
    refs.sort_by_key(|id| positions[id]);
    let ordered = refs.iter().map(|id| sla.clause(id).expect("resolved")).collect();
    Ok(ordered)
}

/// Evaluates every referenced clause against `binding` and the SLA's terms
/// over the clause verdicts. Each clause is evaluated exactly once even if
/// referenced multiple times; the counter in the returned stats proves it.
pub fn verify_at_with_stats(sla: &Sla, binding: &Binding) -> Result<(ComplianceReport, VerifyStats)> {
    let ordered = referenced_clauses(sla)?;

    for clause in &ordered {
        if clause.is_symbolic() {
            return Err(Error::SymbolicClause {
                clause_id: clause.id.clone(),
            });
        }
    }

    let missing: Vec<String> = ordered
        .iter()
        .filter(|c| !binding.contains(c.metric_name().expect("concrete")))
        .map(|c| c.id.clone())
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingIndicator {
            clause_ids: missing,
        });
    }

    let mut stats = VerifyStats::default();
    let mut memo: HashMap<&str, bool> = HashMap::new();
    let mut verdicts = Vec::with_capacity(ordered.len());
    for clause in &ordered {
        let value = binding.get(clause.metric_name().expect("concrete")).expect("present");
        let satisfied = clause.evaluate(value)?;
        stats.clause_evaluations += 1;
        memo.insert(clause.id.as_str(), satisfied);
        verdicts.push(ClauseVerdict {
            clause_id: clause.id.clone(),
            satisfied,
        });
    }

    let overall = sla.terms.eval(&|id| memo[id]);
    let report = ComplianceReport {
        sla_name: sla.name.clone(),
        timestamp: binding.timestamp,
        verdicts,
        overall,
        missing_indicators: Vec::new(),
    };
    Ok((report, stats))
}

/// Point-in-time verification of `sla` against `binding`.
pub fn verify_at(sla: &Sla, binding: &Binding) -> Result<ComplianceReport> {
    verify_at_with_stats(sla, binding).map(|(report, _)| report)
}

/// Verifies at every step t0, t0+step, ... up to t1 and folds consecutive
/// clause violations into maximal intervals with penalties.
pub fn verify_window(
    sla: &Sla,
    trace: &MetricTrace,
    t0: u64,
    t1: u64,
    step: u64,
) -> Result<WindowReport> {
    if t0 > t1 || step < 1 {
        return Err(Error::InvalidWindow { t0, t1, step });
    }

    let mut step_reports = Vec::new();
    let mut t = t0;
    loop {
        // the t0 report carries the MissingIndicator check for the window
        let report = verify_at(sla, &bind(trace, t))?;
        step_reports.push(report);
        match t.checked_add(step) {
            Some(next) if next <= t1 => t = next,
            _ => break,
        }
    }

    let steps: Vec<StepVerdict> = step_reports
        .iter()
        .map(|r| StepVerdict {
            t: r.timestamp,
            overall: r.overall,
        })
        .collect();

    let ordered = referenced_clauses(sla)?;
    let mut clause_reports = Vec::with_capacity(ordered.len());
    let mut total_penalty: i64 = 0;
    for clause in ordered {
        let mut violations: Vec<ViolationInterval> = Vec::new();
        let mut open: Option<(u64, u64)> = None;
        for report in &step_reports {
            let satisfied = report
                .verdicts
                .iter()
                .find(|v| v.clause_id == clause.id)
                .expect("clause verdict present")
                .satisfied;
            if satisfied {
                if let Some((start, end)) = open.take() {
                    violations.push(interval(start, end, step));
                }
            } else {
                open = Some(match open {
                    None => (report.timestamp, report.timestamp),
                    Some((start, _)) => (start, report.timestamp),
                });
            }
        }
        if let Some((start, end)) = open {
            // still violating at the window edge; close it there
            violations.push(interval(start, end, step));
        }

        let penalty_spec = clause.penalty();
        let penalty = violations
            .iter()
            .map(|v| penalty_spec.apply(v.elapsed))
            .fold(0i64, i64::saturating_add);
        total_penalty = total_penalty.saturating_add(penalty);
        clause_reports.push(ClauseWindowReport {
            clause_id: clause.id.clone(),
            violations,
            penalty,
        });
    }

    Ok(WindowReport {
        sla_name: sla.name.clone(),
        window_start: t0,
        window_end: t1,
        step,
        clauses: clause_reports,
        total_penalty,
        steps,
    })
}

fn interval(start: u64, end: u64, step: u64) -> ViolationInterval {
    ViolationInterval {
        start,
        end,
        elapsed: (end - start).saturating_add(step),
    }
}
