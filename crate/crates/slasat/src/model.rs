//! SLA domain model: clause quadruples, boolean terms over clause ids,
//! penalty arithmetic, validation, and conjunction-based aggregation.
//!
//! Everything here is immutable after construction and all operations are
//! pure, so values can be shared freely across threads.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The kind of value an indicator produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueKind {
    Bool,
    Int,
}

impl fmt::Display for ValueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueKind::Bool => write!(f, "bool"),
            ValueKind::Int => write!(f, "int"),
        }
    }
}

/// A named metric a clause observes, e.g. an uptime flag or a latency gauge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndicatorSpec {
    pub metric_name: String,
    pub value_kind: ValueKind,
    pub description: Option<String>,
}

impl IndicatorSpec {
    pub fn new(metric_name: impl Into<String>, value_kind: ValueKind) -> Self {
        Self {
            metric_name: metric_name.into(),
            value_kind,
            description: None,
        }
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = Some(description.into());
        self
    }
}

/// One sampled indicator value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndicatorValue {
    Bool(bool),
    Int(i64),
}

impl IndicatorValue {
    pub fn kind(&self) -> ValueKind {
        match self {
            IndicatorValue::Bool(_) => ValueKind::Bool,
            IndicatorValue::Int(_) => ValueKind::Int,
        }
    }
}

impl fmt::Display for IndicatorValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndicatorValue::Bool(b) => write!(f, "{b}"),
            IndicatorValue::Int(i) => write!(f, "{i}"),
        }
    }
}

/// The set of acceptable values for a clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObjectiveSet {
    BoolSet(BTreeSet<bool>),
    IntSet(BTreeSet<i64>),
    /// Inclusive at both ends.
    IntRange { lo: i64, hi: i64 },
}

impl ObjectiveSet {
    pub fn bool_set(values: impl IntoIterator<Item = bool>) -> Self {
        ObjectiveSet::BoolSet(values.into_iter().collect())
    }

    pub fn int_set(values: impl IntoIterator<Item = i64>) -> Self {
        ObjectiveSet::IntSet(values.into_iter().collect())
    }

    pub fn int_range(lo: i64, hi: i64) -> Self {
        ObjectiveSet::IntRange { lo, hi }
    }

    /// The value kind of the set's elements.
    pub fn element_kind(&self) -> ValueKind {
        match self {
            ObjectiveSet::BoolSet(_) => ValueKind::Bool,
            ObjectiveSet::IntSet(_) | ObjectiveSet::IntRange { .. } => ValueKind::Int,
        }
    }
}

/// The predicate that decides whether an indicator value meets the objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvaluatorKind {
    /// Value is a member of the objective set.
    Membership,
    /// Value falls inside the objective's inclusive range.
    Range,
    /// Value is at least the single-element objective's threshold.
    AtLeast,
    /// Value is at most the single-element objective's threshold.
    AtMost,
}

impl fmt::Display for EvaluatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvaluatorKind::Membership => write!(f, "membership"),
            EvaluatorKind::Range => write!(f, "range"),
            EvaluatorKind::AtLeast => write!(f, "at_least"),
            EvaluatorKind::AtMost => write!(f, "at_most"),
        }
    }
}

/// Maps the elapsed duration of a violation to credits owed.
///
/// Credits and time are integers throughout, so penalty totals are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PenaltySpec {
    None,
    /// Flat amount once any violation time has elapsed.
    Constant(i64),
    /// Credits per time unit of violation.
    Linear(i64),
    /// Flat amount once the violation has lasted at least `threshold`.
    Step { threshold: u64, amount: i64 },
}

impl PenaltySpec {
    /// Credits owed after `elapsed` time units of continuous violation.
    ///
    /// Zero elapsed time means no violation occurred, so every variant
    /// returns 0 for it. Arithmetic saturates at the i64 range ends.
    pub fn apply(&self, elapsed: u64) -> i64 {
        if elapsed == 0 {
            return 0;
        }
        match *self {
            PenaltySpec::None => 0,
            PenaltySpec::Constant(amount) => amount,
            PenaltySpec::Linear(rate) => {
                let elapsed = i64::try_from(elapsed).unwrap_or(i64::MAX);
                rate.saturating_mul(elapsed)
            }
            PenaltySpec::Step { threshold, amount } => {
                if elapsed >= threshold {
                    amount
                } else {
                    0
                }
            }
        }
    }
}

/// The body of a clause: either a concrete quadruple or a symbolic
/// placeholder produced by lifting a boolean formula into an SLA.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClauseKind {
    /// A free boolean term with no indicator, objective, or penalty.
    Symbolic,
    Concrete {
        indicator: IndicatorSpec,
        objective: ObjectiveSet,
        evaluator: EvaluatorKind,
        penalty: PenaltySpec,
    },
}

/// One SLA clause, identified by id within its SLA.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub id: String,
    pub kind: ClauseKind,
}

impl Clause {
    pub fn concrete(
        id: impl Into<String>,
        indicator: IndicatorSpec,
        objective: ObjectiveSet,
        evaluator: EvaluatorKind,
        penalty: PenaltySpec,
    ) -> Self {
        Self {
            id: id.into(),
            kind: ClauseKind::Concrete {
                indicator,
                objective,
                evaluator,
                penalty,
            },
        }
    }

    pub fn symbolic(id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            kind: ClauseKind::Symbolic,
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self.kind, ClauseKind::Symbolic)
    }

    pub fn indicator(&self) -> Option<&IndicatorSpec> {
        match &self.kind {
            ClauseKind::Concrete { indicator, .. } => Some(indicator),
            ClauseKind::Symbolic => None,
        }
    }

    pub fn metric_name(&self) -> Option<&str> {
        self.indicator().map(|i| i.metric_name.as_str())
    }

    /// The clause's penalty spec; symbolic clauses carry none.
    pub fn penalty(&self) -> PenaltySpec {
        match &self.kind {
            ClauseKind::Concrete { penalty, .. } => *penalty,
            ClauseKind::Symbolic => PenaltySpec::None,
        }
    }

    /// Whether `value` satisfies this clause's evaluator/objective pair.
    ///
    /// Pure and constant-time in the objective size.
    pub fn evaluate(&self, value: &IndicatorValue) -> Result<bool> {
        let ClauseKind::Concrete {
            indicator,
            objective,
            evaluator,
            ..
        } = &self.kind
        else {
            return Err(Error::SymbolicClause {
                clause_id: self.id.clone(),
            });
        };
        if value.kind() != indicator.value_kind {
            return Err(Error::KindMismatch {
                clause_id: self.id.clone(),
                expected: indicator.value_kind,
                found: value.kind(),
            });
        }
        let mismatch = || Error::EvaluatorObjectiveMismatch {
            clause_id: self.id.clone(),
        };
        match (evaluator, objective, value) {
            (EvaluatorKind::Membership, ObjectiveSet::BoolSet(set), IndicatorValue::Bool(b)) => {
                Ok(set.contains(b))
            }
            (EvaluatorKind::Membership, ObjectiveSet::IntSet(set), IndicatorValue::Int(i)) => {
                Ok(set.contains(i))
            }
            (EvaluatorKind::Range, ObjectiveSet::IntRange { lo, hi }, IndicatorValue::Int(i)) => {
                Ok(lo <= i && i <= hi)
            }
            (EvaluatorKind::AtLeast, ObjectiveSet::IntSet(set), IndicatorValue::Int(i)) => {
                if set.len() != 1 {
                    return Err(mismatch());
                }
                Ok(*i >= *set.iter().next().expect("non-empty"))
            }
            (EvaluatorKind::AtMost, ObjectiveSet::IntSet(set), IndicatorValue::Int(i)) => {
                if set.len() != 1 {
                    return Err(mismatch());
                }
                Ok(*i <= *set.iter().next().expect("non-empty"))
            }
            _ => Err(mismatch()),
        }
    }
}

/// Boolean expression over clause ids: the SLA's terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlaExpr {
    Ref(String),
    Not(Box<SlaExpr>),
    And(Box<SlaExpr>, Box<SlaExpr>),
    Or(Box<SlaExpr>, Box<SlaExpr>),
}

impl SlaExpr {
    pub fn clause_ref(id: impl Into<String>) -> Self {
        SlaExpr::Ref(id.into())
    }

    // an associated constructor, deliberately named like `and`/`or` below
    // rather than implementing the `Not` operator trait
    #[allow(clippy::should_implement_trait)]
    pub fn not(e: SlaExpr) -> Self {
        SlaExpr::Not(Box::new(e))
    }

    pub fn and(a: SlaExpr, b: SlaExpr) -> Self {
        SlaExpr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: SlaExpr, b: SlaExpr) -> Self {
        SlaExpr::Or(Box::new(a), Box::new(b))
    }

    /// Calls `f` for every clause reference, in left-to-right order,
    /// including repeats.
    pub fn for_each_ref<'a>(&'a self, f: &mut impl FnMut(&'a str)) {
        match self {
            SlaExpr::Ref(id) => f(id),
            SlaExpr::Not(e) => e.for_each_ref(f),
            SlaExpr::And(a, b) | SlaExpr::Or(a, b) => {
                a.for_each_ref(f);
                b.for_each_ref(f);
            }
        }
    }

    /// Distinct referenced clause ids in first-appearance order.
    pub fn referenced_ids(&self) -> Vec<&str> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        self.for_each_ref(&mut |id| {
            if seen.insert(id) {
                out.push(id);
            }
        });
        out
    }

    pub fn node_count(&self) -> usize {
        match self {
            SlaExpr::Ref(_) => 1,
            SlaExpr::Not(e) => 1 + e.node_count(),
            SlaExpr::And(a, b) | SlaExpr::Or(a, b) => 1 + a.node_count() + b.node_count(),
        }
    }

    /// Evaluates the expression with `truth` supplying each clause's verdict.
    pub fn eval(&self, truth: &impl Fn(&str) -> bool) -> bool {
        match self {
            SlaExpr::Ref(id) => truth(id),
            SlaExpr::Not(e) => !e.eval(truth),
            SlaExpr::And(a, b) => {
                // evaluate both sides; reports must not short-circuit
                let l = a.eval(truth);
                let r = b.eval(truth);
                l && r
            }
            SlaExpr::Or(a, b) => {
                let l = a.eval(truth);
                let r = b.eval(truth);
                l || r
            }
        }
    }

    fn map_refs(&self, f: &impl Fn(&str) -> String) -> SlaExpr {
        match self {
            SlaExpr::Ref(id) => SlaExpr::Ref(f(id)),
            SlaExpr::Not(e) => SlaExpr::not(e.map_refs(f)),
            SlaExpr::And(a, b) => SlaExpr::and(a.map_refs(f), b.map_refs(f)),
            SlaExpr::Or(a, b) => SlaExpr::or(a.map_refs(f), b.map_refs(f)),
        }
    }
}

/// A named collection of clauses plus the boolean terms joining them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sla {
    pub name: String,
    pub clauses: Vec<Clause>,
    pub terms: SlaExpr,
}

impl Sla {
    /// Builds an SLA without checking invariants; run [`Sla::validate`]
    /// to surface problems.
    pub fn new(name: impl Into<String>, clauses: Vec<Clause>, terms: SlaExpr) -> Self {
        Self {
            name: name.into(),
            clauses,
            terms,
        }
    }

    /// The first clause with the given id, if any.
    pub fn clause(&self, id: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.id == id)
    }

    /// id -> position of the first definition.
    pub fn clause_positions(&self) -> HashMap<&str, usize> {
        let mut map = HashMap::new();
        for (i, c) in self.clauses.iter().enumerate() {
            map.entry(c.id.as_str()).or_insert(i);
        }
        map
    }

    /// Structural well-formedness check. Returns an empty list iff every
    /// invariant holds; unreferenced clauses are reported as warnings.
    pub fn validate(&self) -> Vec<Issue> {
        let mut issues = Vec::new();
        let mut seen_ids = HashSet::new();
        let mut metric_kinds: HashMap<&str, ValueKind> = HashMap::new();

        for clause in &self.clauses {
            if !seen_ids.insert(clause.id.as_str()) {
                issues.push(Issue::error(
                    IssueKind::DuplicateClauseId(clause.id.clone()),
                    format!("clause '{}'", clause.id),
                    format!("clause id '{}' is defined more than once", clause.id),
                ));
            }
            if !is_dotted_ident(&clause.id) {
                issues.push(Issue::error(
                    IssueKind::InvalidClauseId(clause.id.clone()),
                    format!("clause '{}'", clause.id),
                    format!("clause id '{}' is not a valid identifier", clause.id),
                ));
            }
            let ClauseKind::Concrete {
                indicator,
                objective,
                evaluator,
                penalty,
            } = &clause.kind
            else {
                continue;
            };
            let location = format!("clause '{}'", clause.id);
            if indicator.metric_name.is_empty() {
                issues.push(Issue::error(
                    IssueKind::EmptyMetricName {
                        clause_id: clause.id.clone(),
                    },
                    location.clone(),
                    format!("clause '{}' has an empty metric name", clause.id),
                ));
            } else {
                match metric_kinds.entry(indicator.metric_name.as_str()) {
                    std::collections::hash_map::Entry::Occupied(e) => {
                        if *e.get() != indicator.value_kind {
                            issues.push(Issue::error(
                                IssueKind::IndicatorKindConflict {
                                    metric_name: indicator.metric_name.clone(),
                                },
                                location.clone(),
                                format!(
                                    "indicator '{}' is declared both {} and {}",
                                    indicator.metric_name,
                                    e.get(),
                                    indicator.value_kind
                                ),
                            ));
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(indicator.value_kind);
                    }
                }
            }
            match objective {
                ObjectiveSet::BoolSet(set) if set.is_empty() => {
                    issues.push(Issue::error(
                        IssueKind::EmptyObjectiveSet {
                            clause_id: clause.id.clone(),
                        },
                        location.clone(),
                        format!("clause '{}' has an empty objective set", clause.id),
                    ));
                }
                ObjectiveSet::IntSet(set) if set.is_empty() => {
                    issues.push(Issue::error(
                        IssueKind::EmptyObjectiveSet {
                            clause_id: clause.id.clone(),
                        },
                        location.clone(),
                        format!("clause '{}' has an empty objective set", clause.id),
                    ));
                }
                ObjectiveSet::IntRange { lo, hi } if lo > hi => {
                    issues.push(Issue::error(
                        IssueKind::InvalidRange {
                            clause_id: clause.id.clone(),
                        },
                        location.clone(),
                        format!("clause '{}' has range({lo}, {hi}) with lo > hi", clause.id),
                    ));
                }
                _ => {}
            }
            if objective.element_kind() != indicator.value_kind {
                issues.push(Issue::error(
                    IssueKind::ObjectiveKindMismatch {
                        clause_id: clause.id.clone(),
                    },
                    location.clone(),
                    format!(
                        "clause '{}': objective holds {} values but the indicator is {}",
                        clause.id,
                        objective.element_kind(),
                        indicator.value_kind
                    ),
                ));
            }
            let pairing_ok = match (evaluator, objective) {
                (EvaluatorKind::Membership, ObjectiveSet::BoolSet(_))
                | (EvaluatorKind::Membership, ObjectiveSet::IntSet(_))
                | (EvaluatorKind::Range, ObjectiveSet::IntRange { .. }) => true,
                (EvaluatorKind::AtLeast, ObjectiveSet::IntSet(set))
                | (EvaluatorKind::AtMost, ObjectiveSet::IntSet(set)) => set.len() == 1,
                _ => false,
            };
            if !pairing_ok {
                issues.push(Issue::error(
                    IssueKind::EvaluatorObjectiveMismatch {
                        clause_id: clause.id.clone(),
                    },
                    location.clone(),
                    format!(
                        "clause '{}': evaluator {} does not pair with this objective",
                        clause.id, evaluator
                    ),
                ));
            }
            let negative = match *penalty {
                PenaltySpec::Constant(a) => a < 0,
                PenaltySpec::Linear(r) => r < 0,
                PenaltySpec::Step { amount, .. } => amount < 0,
                PenaltySpec::None => false,
            };
            if negative {
                issues.push(Issue::error(
                    IssueKind::NegativePenalty {
                        clause_id: clause.id.clone(),
                    },
                    location,
                    format!("clause '{}' has a negative penalty parameter", clause.id),
                ));
            }
        }

        let defined: HashSet<&str> = self.clauses.iter().map(|c| c.id.as_str()).collect();
        let mut reported_unresolved = HashSet::new();
        self.terms.for_each_ref(&mut |id| {
            if !defined.contains(id) && reported_unresolved.insert(id.to_owned()) {
                issues.push(Issue::error(
                    IssueKind::UnresolvedClauseRef(id.to_owned()),
                    "terms expression".to_owned(),
                    format!("terms reference undefined clause '{id}'"),
                ));
            }
        });

        let referenced: HashSet<&str> = self.terms.referenced_ids().into_iter().collect();
        for clause in &self.clauses {
            if !referenced.contains(clause.id.as_str()) {
                issues.push(Issue::warning(
                    IssueKind::UnreferencedClause(clause.id.clone()),
                    format!("clause '{}'", clause.id),
                    format!("clause '{}' is never referenced by the terms", clause.id),
                ));
            }
        }

        issues
    }
}

/// Severity of a validation issue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Warning,
    Error,
}

/// What kind of problem a validation issue reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IssueKind {
    DuplicateClauseId(String),
    InvalidClauseId(String),
    UnresolvedClauseRef(String),
    EmptyMetricName { clause_id: String },
    IndicatorKindConflict { metric_name: String },
    EmptyObjectiveSet { clause_id: String },
    InvalidRange { clause_id: String },
    ObjectiveKindMismatch { clause_id: String },
    EvaluatorObjectiveMismatch { clause_id: String },
    NegativePenalty { clause_id: String },
    UnreferencedClause(String),
}

/// One finding from [`Sla::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub severity: Severity,
    pub kind: IssueKind,
    pub location: String,
    pub message: String,
}

impl Issue {
    fn error(kind: IssueKind, location: String, message: String) -> Self {
        Self {
            severity: Severity::Error,
            kind,
            location,
            message,
        }
    }

    fn warning(kind: IssueKind, location: String, message: String) -> Self {
        Self {
            severity: Severity::Warning,
            kind,
            location,
            message,
        }
    }
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{sev}: {} ({})", self.message, self.location)
    }
}

/// True if any issue in the list is an error.
pub fn has_errors(issues: &[Issue]) -> bool {
    issues.iter().any(|i| i.severity == Severity::Error)
}

/// Whether `s` lexes as a (possibly dotted) identifier, e.g. `latency`
/// or `nimbus.latency`.
pub fn is_dotted_ident(s: &str) -> bool {
    !s.is_empty()
        && s.split('.').all(|seg| {
            let mut chars = seg.chars();
            match chars.next() {
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
                _ => return false,
            }
            chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        })
}

/// Conjoins SLAs into one: clause ids are namespaced as
/// `<sla-name>.<clause-id>` and the terms become the left-associated AND
/// of the inputs' terms.
pub fn aggregate(slas: &[Sla], name: &str) -> Result<Sla> {
    if slas.is_empty() {
        return Err(Error::EmptyAggregate);
    }
    let mut seen_names = HashSet::new();
    for sla in slas {
        if !is_dotted_ident(&sla.name) {
            return Err(Error::InvalidSlaName {
                name: sla.name.clone(),
            });
        }
        if !seen_names.insert(sla.name.as_str()) {
            return Err(Error::DuplicateSlaName {
                name: sla.name.clone(),
            });
        }
    }

    let mut clauses = Vec::new();
    let mut terms: Option<SlaExpr> = None;
    for sla in slas {
        let prefix = &sla.name;
        for clause in &sla.clauses {
            let mut namespaced = clause.clone();
            namespaced.id = format!("{prefix}.{}", clause.id);
            clauses.push(namespaced);
        }
        let rewritten = sla.terms.map_refs(&|id| format!("{prefix}.{id}"));
        terms = Some(match terms {
            None => rewritten,
            Some(acc) => SlaExpr::and(acc, rewritten),
        });
    }

    Ok(Sla::new(name, clauses, terms.expect("non-empty input")))
}
