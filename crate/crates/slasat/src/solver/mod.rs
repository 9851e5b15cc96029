//! Satisfiability backend: CNF conversion, 2-CNF detection, and the two
//! solving paths (implication-graph 2SAT and DPLL search).
//!
//! Formulas already shaped as conjunctions of ≤2-literal disjunctions take
//! the polynomial path; everything else goes through a Tseitin encoding and
//! complete DPLL search with a configurable decision budget.

mod dpll;
mod twosat;

use serde::{Deserialize, Serialize};

use crate::bridge::{
    abstract_sla, eval_formula, fold_constants, Assignment, BoolFormula, FormulaExpr, VarMap,
};
use crate::error::{Error, Result};
use crate::model::{aggregate, has_errors, Severity, Sla};

pub use dpll::solve_dpll;
pub use twosat::solve_2sat;

/// Conjunctive normal form: clauses of non-zero signed literals.
///
/// Positive literal `v` is variable `v`; negative `-v` its negation. An
/// empty clause is legal and denotes unsatisfiability. `origin` names each
/// variable: abstraction variables keep their clause ids, Tseitin
/// auxiliaries live in the reserved `aux<i>` namespace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cnf {
    pub num_vars: u32,
    pub clauses: Vec<Vec<i32>>,
    pub origin: VarMap,
}

impl Cnf {
    pub fn new(num_vars: u32, clauses: Vec<Vec<i32>>, origin: VarMap) -> Self {
        Self {
            num_vars,
            clauses,
            origin,
        }
    }

    /// Checks that every literal is non-zero and within `1..=num_vars`.
    pub fn check(&self) -> Result<()> {
        for (i, clause) in self.clauses.iter().enumerate() {
            for &lit in clause {
                if lit == 0 {
                    return Err(Error::InvalidCnf {
                        reason: format!("literal 0 in clause {i}"),
                    });
                }
                if lit.unsigned_abs() > self.num_vars {
                    return Err(Error::VarOutOfRange {
                        var: lit.unsigned_abs(),
                        num_vars: self.num_vars,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Syntactic CNF class: at most two literals per clause or not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CnfClass {
    TwoSat,
    General,
}

/// Which solving path produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    TwoSat,
    Dpll,
}

impl std::fmt::Display for SolverKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolverKind::TwoSat => f.write_str("two_sat"),
            SolverKind::Dpll => f.write_str("dpll"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbortReason {
    DecisionLimit,
}

/// Outcome of a satisfiability run. `Aborted` is a result, not an error:
/// the search gave up at the decision budget without a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveResult {
    Sat(Assignment),
    Unsat,
    Aborted(AbortReason),
}

/// Search effort counters; which fields move depends on the path taken.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub decisions: u64,
    pub propagations: u64,
    pub scc_count: u64,
}

/// Solver limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveConfig {
    /// DPLL gives up with `Aborted(DecisionLimit)` once this many branching
    /// decisions have been made.
    pub decision_limit: u64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            decision_limit: 1_000_000,
        }
    }
}

/// Truth value one clause must take in a satisfying scenario.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseRequirement {
    pub clause_id: String,
    pub required: bool,
}

/// Full outcome of [`solve_slas`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub result: SolveResult,
    pub solver_used: SolverKind,
    /// On Sat, one entry per original (non-auxiliary) variable.
    pub clause_requirements: Vec<ClauseRequirement>,
    pub stats: SolveStats,
}

/// `TwoSat` iff every clause has at most two literals.
pub fn classify(cnf: &Cnf) -> CnfClass {
    if cnf.clauses.iter().all(|c| c.len() <= 2) {
        CnfClass::TwoSat
    } else {
        CnfClass::General
    }
}

fn as_literal(e: &FormulaExpr) -> Option<i32> {
    match e {
        FormulaExpr::Var(v) => Some(*v as i32),
        FormulaExpr::Not(inner) => match &**inner {
            FormulaExpr::Var(v) => Some(-(*v as i32)),
            _ => None,
        },
        _ => None,
    }
}

fn as_disjunction(e: &FormulaExpr, out: &mut Vec<i32>) -> bool {
    if let Some(lit) = as_literal(e) {
        out.push(lit);
        return true;
    }
    if let FormulaExpr::Or(a, b) = e {
        return as_disjunction(a, out) && as_disjunction(b, out);
    }
    false
}

/// Reads `e` as a conjunction of disjunctions of literals, if it is one.
fn as_cnf_clauses(e: &FormulaExpr, out: &mut Vec<Vec<i32>>) -> bool {
    if let FormulaExpr::And(a, b) = e {
        return as_cnf_clauses(a, out) && as_cnf_clauses(b, out);
    }
    let mut clause = Vec::new();
    if as_disjunction(e, &mut clause) {
        out.push(clause);
        true
    } else {
        false
    }
}

struct Tseitin {
    clauses: Vec<Vec<i32>>,
    next_var: u32,
    aux_count: u32,
}

impl Tseitin {
    fn fresh(&mut self) -> i32 {
        self.next_var += 1;
        self.aux_count += 1;
        self.next_var as i32
    }

    /// Returns a literal equivalent to the subtree, defining auxiliaries
    /// for every non-literal node with the standard templates.
    fn encode(&mut self, e: &FormulaExpr) -> i32 {
        if let Some(lit) = as_literal(e) {
            return lit;
        }
        match e {
            FormulaExpr::Not(inner) => {
                let a = self.encode(inner);
                let n = self.fresh();
                self.clauses.push(vec![-n, -a]);
                self.clauses.push(vec![n, a]);
                n
            }
            FormulaExpr::And(x, y) => {
                let (a, b) = (self.encode(x), self.encode(y));
                let n = self.fresh();
                self.clauses.push(vec![-n, a]);
                self.clauses.push(vec![-n, b]);
                self.clauses.push(vec![n, -a, -b]);
                n
            }
            FormulaExpr::Or(x, y) => {
                let (a, b) = (self.encode(x), self.encode(y));
                let n = self.fresh();
                self.clauses.push(vec![-n, a, b]);
                self.clauses.push(vec![n, -a]);
                self.clauses.push(vec![n, -b]);
                n
            }
            FormulaExpr::Var(_) | FormulaExpr::Const(_) => unreachable!("handled by caller"),
        }
    }
}

/// Converts a formula to an equisatisfiable CNF, naming original variables
/// after `map`.
///
/// A formula that *is* a conjunction of disjunctions of literals passes
/// through verbatim with no auxiliary variables — that keeps 2SAT-shaped
/// inputs on the polynomial path. Anything else gets the Tseitin encoding:
/// one auxiliary per non-literal node plus a unit clause asserting the
/// root. A formula already folded to a bare constant becomes the trivial
/// CNF (no clauses, or one empty clause); constants anywhere deeper are
/// rejected — fold first.
pub fn to_cnf_named(formula: &BoolFormula, map: &VarMap) -> Result<Cnf> {
    if map.len() != formula.num_vars {
        return Err(Error::InvalidCnf {
            reason: format!(
                "variable map names {} variables but formula declares {}",
                map.len(),
                formula.num_vars
            ),
        });
    }
    if let FormulaExpr::Const(b) = formula.root {
        let clauses = if b { vec![] } else { vec![vec![]] };
        return Ok(Cnf::new(formula.num_vars, clauses, map.clone()));
    }
    if formula.root.contains_const() {
        return Err(Error::ConstInFormula);
    }
    formula.check_vars()?;

    let mut clauses = Vec::new();
    if as_cnf_clauses(&formula.root, &mut clauses) {
        return Ok(Cnf::new(formula.num_vars, clauses, map.clone()));
    }

    let mut enc = Tseitin {
        clauses: Vec::new(),
        next_var: formula.num_vars,
        aux_count: 0,
    };
    let root = enc.encode(&formula.root);
    enc.clauses.push(vec![root]);

    let mut ids: Vec<String> = map.iter().map(|(_, id)| id.to_owned()).collect();
    ids.extend((1..=enc.aux_count).map(|i| format!("aux{i}")));
    Ok(Cnf::new(enc.next_var, enc.clauses, VarMap::new(ids)))
}

/// [`to_cnf_named`] with default variable names `v<i>`.
pub fn to_cnf(formula: &BoolFormula) -> Result<Cnf> {
    let ids = (1..=formula.num_vars).map(|v| format!("v{v}")).collect();
    to_cnf_named(formula, &VarMap::new(ids))
}

/// Rebuilds the formula a CNF denotes: a conjunction of disjunctions.
///
/// The result is Const-free, so empty CNFs and empty clauses (which would
/// need constants) are rejected.
pub fn formula_from_cnf(cnf: &Cnf) -> Result<BoolFormula> {
    cnf.check()?;
    if cnf.clauses.is_empty() {
        return Err(Error::EmptyCnf);
    }
    let mut clause_exprs = Vec::with_capacity(cnf.clauses.len());
    for clause in &cnf.clauses {
        let mut lits = clause.iter().map(|&lit| {
            let var = FormulaExpr::Var(lit.unsigned_abs());
            if lit > 0 {
                var
            } else {
                FormulaExpr::not(var)
            }
        });
        let Some(first) = lits.next() else {
            return Err(Error::EmptyClauseInCnf);
        };
        clause_exprs.push(lits.fold(first, FormulaExpr::or));
    }
    let mut clause_exprs = clause_exprs.into_iter();
    let first = clause_exprs.next().expect("non-empty checked");
    let root = clause_exprs.fold(first, FormulaExpr::and);
    Ok(BoolFormula::new(cnf.num_vars, root))
}

/// Dispatches on [`classify`]: the 2SAT path when every clause fits, DPLL
/// otherwise.
pub fn solve_cnf(cnf: &Cnf, config: &SolveConfig) -> Result<(SolveResult, SolverKind, SolveStats)> {
    match classify(cnf) {
        CnfClass::TwoSat => {
            let (result, stats) = solve_2sat(cnf)?;
            Ok((result, SolverKind::TwoSat, stats))
        }
        CnfClass::General => {
            let (result, stats) = solve_dpll(cnf, config)?;
            Ok((result, SolverKind::Dpll, stats))
        }
    }
}

/// Decides joint satisfiability of a group of SLAs.
///
/// Pipeline: aggregate → abstract → constant-fold → CNF → classify →
/// solve. On Sat, the witness is mapped back through the variable map
/// into per-clause truth requirements (auxiliary variables dropped).
pub fn solve_slas(slas: &[Sla], config: &SolveConfig) -> Result<SolveReport> {
    for sla in slas {
        let issues = sla.validate();
        if has_errors(&issues) {
            let first = issues
                .iter()
                .find(|i| i.severity == Severity::Error)
                .expect("has_errors");
            return Err(Error::InvalidSla {
                sla_name: sla.name.clone(),
                message: first.to_string(),
            });
        }
    }

    let combined = aggregate(slas, "aggregate")?;
    let (formula, map) = abstract_sla(&combined);
    let folded = fold_constants(&formula);
    let cnf = to_cnf_named(&folded, &map)?;
    let (result, solver_used, stats) = solve_cnf(&cnf, config)?;

    if let SolveResult::Sat(assignment) = &result {
        debug_assert_eq!(
            eval_formula(&folded, assignment),
            Ok(true),
            "satisfying assignment must hold on the pre-CNF formula"
        );
    }

    let clause_requirements = match &result {
        SolveResult::Sat(assignment) => map
            .iter()
            .map(|(var, id)| ClauseRequirement {
                clause_id: id.to_owned(),
                required: assignment.get(var).expect("assignment total"),
            })
            .collect(),
        _ => Vec::new(),
    };

    Ok(SolveReport {
        result,
        solver_used,
        clause_requirements,
        stats,
    })
}
