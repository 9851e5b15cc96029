//! Service-level agreements as boolean formulas: model, verify, solve.
//!
//! An SLA here is a set of named clauses — each one an indicator, an
//! objective set, an evaluator predicate, and a penalty function — joined
//! by a boolean expression over clause ids. The crate covers the full
//! round trip between that model and propositional logic:
//!
//! * [`model`] — the clause/SLA types, semantic validation, and
//!   conjunction of many SLAs into one aggregate;
//! * [`verify`] — binding metric traces to instants, point-in-time
//!   compliance verdicts, and windowed violation/penalty accounting;
//! * [`bridge`] — abstraction (clauses → variables), grounding
//!   (clauses → constants at one instant), and lifting (formula →
//!   symbolic SLA);
//! * [`solver`] — CNF conversion with a 2-CNF fast path, implication-graph
//!   2SAT, DPLL search, and the joint-satisfiability pipeline
//!   [`solver::solve_slas`];
//! * [`dsl`] — the SLA document grammar, metric trace CSV, and DIMACS
//!   interchange.
//!
//! ```
//! use slasat::dsl::parse_sla;
//! use slasat::model::IndicatorValue;
//! use slasat::verify::{verify_at, Binding};
//!
//! let sla = parse_sla(r#"
//!     sla "demo" {
//!       clauses {
//!         up: indicator(bool, "up") objective(set(true)) evaluator(membership) penalty(none);
//!       }
//!       terms: up;
//!     }
//! "#).unwrap();
//! let binding = Binding::at(0).with("up", IndicatorValue::Bool(true));
//! assert!(verify_at(&sla, &binding).unwrap().overall);
//! ```

pub mod bridge;
pub mod dsl;
pub mod error;
pub mod model;
pub mod solver;
pub mod verify;

pub use bridge::{abstract_sla, eval_formula, fold_constants, ground, lift};
pub use bridge::{Assignment, BoolFormula, FormulaExpr, VarMap};
pub use dsl::{export_dimacs, parse_dimacs, parse_sla, parse_trace, serialize_sla};
pub use dsl::{ParseError, SourceSpan};
pub use error::{Error, Result};
pub use model::{aggregate, Clause, IndicatorValue, Sla, SlaExpr};
pub use solver::{classify, solve_2sat, solve_dpll, solve_slas, to_cnf, to_cnf_named};
pub use solver::{Cnf, SolveConfig, SolveReport, SolveResult, SolverKind};
pub use verify::{bind, verify_at, verify_window};
pub use verify::{Binding, ComplianceReport, MetricTrace, WindowReport};
