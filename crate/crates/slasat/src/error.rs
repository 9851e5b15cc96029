//! Library-wide error type.

use crate::dsl::ParseError;
use crate::model::ValueKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A value of the wrong kind was handed to a clause evaluator.
    #[error("clause '{clause_id}': expected a {expected:?} value, got {found:?}")]
    KindMismatch {
        clause_id: String,
        expected: ValueKind,
        found: ValueKind,
    },

    /// A symbolic clause carries no indicator and cannot be evaluated.
    #[error("clause '{clause_id}' is symbolic and cannot be evaluated against a binding")]
    SymbolicClause { clause_id: String },

    /// The clause's evaluator does not pair with its objective set.
    #[error("clause '{clause_id}': evaluator does not match the objective set shape")]
    EvaluatorObjectiveMismatch { clause_id: String },

    /// Aggregation over an empty SLA list.
    #[error("cannot aggregate an empty list of SLAs")]
    EmptyAggregate,

    /// Two aggregation inputs share a name, so namespaced ids would collide.
    #[error("duplicate SLA name '{name}' among aggregation inputs")]
    DuplicateSlaName { name: String },

    /// An SLA name that cannot serve as a clause-id namespace prefix.
    #[error("SLA name '{name}' is not usable as a clause-id namespace (must be a dotted identifier)")]
    InvalidSlaName { name: String },

    /// An expression references a clause id that is not defined.
    #[error("expression references undefined clause '{clause_id}'")]
    UnresolvedClauseRef { clause_id: String },

    /// An SLA failed validation where a valid one was required.
    #[error("SLA '{sla_name}' is invalid: {message}")]
    InvalidSla { sla_name: String, message: String },

    /// Referenced clauses whose indicators are absent from the binding.
    #[error("missing indicator data for clause(s): {}", clause_ids.join(", "))]
    MissingIndicator { clause_ids: Vec<String> },

    /// A verification window with t0 > t1 or step < 1.
    #[error("invalid window [{t0}, {t1}] with step {step}")]
    InvalidWindow { t0: u64, t1: u64, step: u64 },

    /// Two samples for the same indicator at the same timestamp.
    #[error("duplicate sample for indicator '{indicator}' at t={t}")]
    DuplicateSample { indicator: String, t: u64 },

    /// A trace mixes value kinds under one indicator name.
    #[error("indicator '{indicator}' mixes boolean and integer samples")]
    TraceKindConflict { indicator: String },

    /// A constant node where only variables are allowed.
    #[error("formula contains a constant; fold constants away first")]
    ConstInFormula,

    /// A variable index of 0 or above the declared variable count.
    #[error("variable {var} is outside the declared range 1..={num_vars}")]
    VarOutOfRange { var: u32, num_vars: u32 },

    /// Formula evaluation hit a variable the assignment does not cover.
    #[error("no assignment for variable {var}")]
    UnassignedVariable { var: u32 },

    /// A CNF literal outside the declared variable range, or a malformed clause set.
    #[error("invalid CNF: {reason}")]
    InvalidCnf { reason: String },

    /// The 2SAT solver was handed a clause with more than two literals.
    #[error("CNF is not 2-CNF: clause {clause_index} has {literals} literals")]
    NotTwoCnf { clause_index: usize, literals: usize },

    /// A CNF with no clauses has no structure to turn into a formula.
    #[error("cannot build a formula from a CNF with no clauses")]
    EmptyCnf,

    /// An empty clause denotes plain falsehood and cannot become a formula leaf.
    #[error("cannot build a formula from a CNF containing an empty clause")]
    EmptyClauseInCnf,

    /// Textual input that failed to parse.
    #[error(transparent)]
    Parse(#[from] ParseError),
}
