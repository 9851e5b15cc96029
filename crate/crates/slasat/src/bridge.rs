//! Translation between SLAs and boolean formulas.
//!
//! Three directions are supported:
//!
//! * [`abstract_sla`] forgets indicator semantics, mapping each distinct
//!   clause reference to a propositional variable;
//! * [`ground`] pins an SLA to one instant, mapping each reference to the
//!   constant verdict of its clause under a binding;
//! * [`lift`] reads a constant-free formula back as an SLA over symbolic
//!   clauses, so that satisfying assignments become clause requirements.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Clause, Sla, SlaExpr};
use crate::verify::Binding;

/// A propositional formula over variables `1..=num_vars`.
///
/// Variables are 1-based so they line up with signed-literal conventions
/// in CNF form, where variable `v` appears as literal `v` or `-v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoolFormula {
    pub num_vars: u32,
    pub root: FormulaExpr,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormulaExpr {
    Var(u32),
    Const(bool),
    Not(Box<FormulaExpr>),
    And(Box<FormulaExpr>, Box<FormulaExpr>),
    Or(Box<FormulaExpr>, Box<FormulaExpr>),
}

impl FormulaExpr {
    pub fn var(v: u32) -> Self {
        FormulaExpr::Var(v)
    }

    // an associated constructor, deliberately named like `and`/`or` below
    // rather than implementing the `Not` operator trait
    #[allow(clippy::should_implement_trait)]
    pub fn not(e: FormulaExpr) -> Self {
        FormulaExpr::Not(Box::new(e))
    }

    pub fn and(a: FormulaExpr, b: FormulaExpr) -> Self {
        FormulaExpr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: FormulaExpr, b: FormulaExpr) -> Self {
        FormulaExpr::Or(Box::new(a), Box::new(b))
    }

    /// Largest variable index mentioned anywhere in the expression.
    pub fn max_var(&self) -> u32 {
        match self {
            FormulaExpr::Var(v) => *v,
            FormulaExpr::Const(_) => 0,
            FormulaExpr::Not(e) => e.max_var(),
            FormulaExpr::And(a, b) | FormulaExpr::Or(a, b) => a.max_var().max(b.max_var()),
        }
    }

    pub fn contains_const(&self) -> bool {
        match self {
            FormulaExpr::Var(_) => false,
            FormulaExpr::Const(_) => true,
            FormulaExpr::Not(e) => e.contains_const(),
            FormulaExpr::And(a, b) | FormulaExpr::Or(a, b) => {
                a.contains_const() || b.contains_const()
            }
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            FormulaExpr::Var(_) | FormulaExpr::Const(_) => 1,
            FormulaExpr::Not(e) => 1 + e.node_count(),
            FormulaExpr::And(a, b) | FormulaExpr::Or(a, b) => 1 + a.node_count() + b.node_count(),
        }
    }
}

impl BoolFormula {
    pub fn new(num_vars: u32, root: FormulaExpr) -> Self {
        Self { num_vars, root }
    }

    /// Checks that every variable lies in `1..=num_vars`.
    pub fn check_vars(&self) -> Result<()> {
        fn walk(e: &FormulaExpr, num_vars: u32) -> Result<()> {
            match e {
                FormulaExpr::Var(v) => {
                    if *v == 0 || *v > num_vars {
                        Err(Error::VarOutOfRange {
                            var: *v,
                            num_vars,
                        })
                    } else {
                        Ok(())
                    }
                }
                FormulaExpr::Const(_) => Ok(()),
                FormulaExpr::Not(inner) => walk(inner, num_vars),
                FormulaExpr::And(a, b) | FormulaExpr::Or(a, b) => {
                    walk(a, num_vars)?;
                    walk(b, num_vars)
                }
            }
        }
        walk(&self.root, self.num_vars)
    }
}

/// Bidirectional mapping between variables `1..=n` and clause ids.
///
/// Variable `v` corresponds to `ids[v - 1]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarMap {
    ids: Vec<String>,
}

impl VarMap {
    pub fn new(ids: Vec<String>) -> Self {
        Self { ids }
    }

    pub fn len(&self) -> u32 {
        self.ids.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id_of(&self, var: u32) -> Option<&str> {
        var.checked_sub(1)
            .and_then(|i| self.ids.get(i as usize))
            .map(String::as_str)
    }

    pub fn var_of(&self, id: &str) -> Option<u32> {
        self.ids.iter().position(|x| x == id).map(|i| i as u32 + 1)
    }

    /// `(var, id)` pairs in variable order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &str)> {
        self.ids
            .iter()
            .enumerate()
            .map(|(i, id)| (i as u32 + 1, id.as_str()))
    }
}

/// A total truth assignment for variables `1..=values.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Self { values }
    }

    pub fn get(&self, var: u32) -> Option<bool> {
        var.checked_sub(1).and_then(|i| self.values.get(i as usize)).copied()
    }

    pub fn num_vars(&self) -> u32 {
        self.values.len() as u32
    }
}

/// Forgets indicator semantics: each distinct clause reference becomes a
/// variable, numbered by first appearance in the terms expression.
///
/// Purely structural — references are not resolved against the clause
/// list, so this works on any expression shape.
pub fn abstract_sla(sla: &Sla) -> (BoolFormula, VarMap) {
    let ids = sla.terms.referenced_ids();
    let var_of = |id: &str| ids.iter().position(|x| *x == id).expect("ref collected") as u32 + 1;

    fn build(expr: &SlaExpr, var_of: &impl Fn(&str) -> u32) -> FormulaExpr {
        match expr {
            SlaExpr::Ref(id) => FormulaExpr::Var(var_of(id)),
            SlaExpr::Not(e) => FormulaExpr::not(build(e, var_of)),
            SlaExpr::And(a, b) => FormulaExpr::and(build(a, var_of), build(b, var_of)),
            SlaExpr::Or(a, b) => FormulaExpr::or(build(a, var_of), build(b, var_of)),
        }
    }

    let root = build(&sla.terms, &var_of);
    let num_vars = ids.len() as u32;
    let map = VarMap::new(ids.into_iter().map(str::to_owned).collect());
    (BoolFormula::new(num_vars, root), map)
}

/// Pins `sla` to the instant captured by `binding`: every clause reference
/// is replaced by the constant verdict of that clause. The result has no
/// variables, so [`fold_constants`] reduces it to a single constant.
pub fn ground(sla: &Sla, binding: &Binding) -> Result<BoolFormula> {
    let positions = sla.clause_positions();
    let refs = sla.terms.referenced_ids();

    let mut missing = Vec::new();
    let mut resolved: Vec<(&str, &Clause)> = Vec::with_capacity(refs.len());
    for id in &refs {
        let Some(&pos) = positions.get(id) else {
            return Err(Error::UnresolvedClauseRef {
                clause_id: (*id).to_owned(),
            });
        };
        resolved.push((id, &sla.clauses[pos]));
    }
    resolved.sort_by_key(|(id, _)| positions[*id]);
    for (_, clause) in &resolved {
        if clause.is_symbolic() {
            return Err(Error::SymbolicClause {
                clause_id: clause.id.clone(),
            });
        }
        if !binding.contains(clause.metric_name().expect("concrete")) {
            missing.push(clause.id.clone());
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingIndicator {
            clause_ids: missing,
        });
    }

    fn build(
        expr: &SlaExpr,
        sla: &Sla,
        binding: &Binding,
    ) -> Result<FormulaExpr> {
        Ok(match expr {
            SlaExpr::Ref(id) => {
                let clause = sla.clause(id).expect("checked above");
                let value = binding
                    .get(clause.metric_name().expect("concrete"))
                    .expect("checked above");
                FormulaExpr::Const(clause.evaluate(value)?)
            }
            SlaExpr::Not(e) => FormulaExpr::not(build(e, sla, binding)?),
            SlaExpr::And(a, b) => {
                FormulaExpr::and(build(a, sla, binding)?, build(b, sla, binding)?)
            }
            SlaExpr::Or(a, b) => {
                FormulaExpr::or(build(a, sla, binding)?, build(b, sla, binding)?)
            }
        })
    }

    let root = build(&sla.terms, sla, binding)?;
    Ok(BoolFormula::new(0, root))
}

/// Reads a constant-free formula back as an SLA named `lifted`: variable
/// `v` becomes a symbolic clause `v<v>`, and the terms expression mirrors
/// the formula. Every declared variable gets a clause, referenced or not.
pub fn lift(formula: &BoolFormula) -> Result<(Sla, VarMap)> {
    if formula.root.contains_const() {
        return Err(Error::ConstInFormula);
    }
    formula.check_vars()?;

    let ids: Vec<String> = (1..=formula.num_vars).map(|v| format!("v{v}")).collect();
    let clauses = ids.iter().map(Clause::symbolic).collect();

    fn build(e: &FormulaExpr, ids: &[String]) -> SlaExpr {
        match e {
            FormulaExpr::Var(v) => SlaExpr::clause_ref(&ids[(*v - 1) as usize]),
            FormulaExpr::Const(_) => unreachable!("const ruled out above"),
            FormulaExpr::Not(inner) => SlaExpr::not(build(inner, ids)),
            FormulaExpr::And(a, b) => SlaExpr::and(build(a, ids), build(b, ids)),
            FormulaExpr::Or(a, b) => SlaExpr::or(build(a, ids), build(b, ids)),
        }
    }

    let terms = build(&formula.root, &ids);
    let sla = Sla::new("lifted", clauses, terms);
    Ok((sla, VarMap::new(ids)))
}

/// Evaluates `formula` under `assignment` without short-circuiting.
pub fn eval_formula(formula: &BoolFormula, assignment: &Assignment) -> Result<bool> {
    fn eval(e: &FormulaExpr, assignment: &Assignment) -> Result<bool> {
        Ok(match e {
            FormulaExpr::Var(v) => assignment
                .get(*v)
                .ok_or(Error::UnassignedVariable { var: *v })?,
            FormulaExpr::Const(b) => *b,
            FormulaExpr::Not(inner) => !eval(inner, assignment)?,
            FormulaExpr::And(a, b) => {
                let (a, b) = (eval(a, assignment)?, eval(b, assignment)?);
                a && b
            }
            FormulaExpr::Or(a, b) => {
                let (a, b) = (eval(a, assignment)?, eval(b, assignment)?);
                a || b
            }
        })
    }
    eval(&formula.root, assignment)
}

/// Pushes constants out of the formula with the usual identities
/// (`x AND true = x`, `x OR true = true`, and so on). The variable count
/// is preserved even when the result no longer mentions some variables.
pub fn fold_constants(formula: &BoolFormula) -> BoolFormula {
    fn fold(e: &FormulaExpr) -> FormulaExpr {
        match e {
            FormulaExpr::Var(v) => FormulaExpr::Var(*v),
            FormulaExpr::Const(b) => FormulaExpr::Const(*b),
            FormulaExpr::Not(inner) => match fold(inner) {
                FormulaExpr::Const(b) => FormulaExpr::Const(!b),
                other => FormulaExpr::not(other),
            },
            FormulaExpr::And(a, b) => match (fold(a), fold(b)) {
                (FormulaExpr::Const(false), _) | (_, FormulaExpr::Const(false)) => {
                    FormulaExpr::Const(false)
                }
                (FormulaExpr::Const(true), other) | (other, FormulaExpr::Const(true)) => other,
                (a, b) => FormulaExpr::and(a, b),
            },
            FormulaExpr::Or(a, b) => match (fold(a), fold(b)) {
                (FormulaExpr::Const(true), _) | (_, FormulaExpr::Const(true)) => {
                    FormulaExpr::Const(true)
                }
                (FormulaExpr::Const(false), other) | (other, FormulaExpr::Const(false)) => other,
                (a, b) => FormulaExpr::or(a, b),
            },
        }
    }
    BoolFormula::new(formula.num_vars, fold(&formula.root))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::IndicatorValue;

    fn nimbus() -> Sla {
        crate::model::tests::nimbus()
    }

    #[test]
    fn abstract_numbers_refs_by_first_appearance() {
        let (formula, map) = abstract_sla(&nimbus());
        assert_eq!(formula.num_vars, 2);
        assert_eq!(
            formula.root,
            FormulaExpr::and(FormulaExpr::Var(1), FormulaExpr::Var(2))
        );
        assert_eq!(map.id_of(1), Some("uptime"));
        assert_eq!(map.id_of(2), Some("latency"));
    }

    #[test]
    fn abstract_shares_var_for_repeated_ref() {
        let sla = Sla::new(
            "rep",
            vec![],
            SlaExpr::or(
                SlaExpr::clause_ref("a"),
                SlaExpr::and(SlaExpr::clause_ref("b"), SlaExpr::clause_ref("a")),
            ),
        );
        let (formula, map) = abstract_sla(&sla);
        assert_eq!(formula.num_vars, 2);
        assert_eq!(
            formula.root,
            FormulaExpr::or(
                FormulaExpr::Var(1),
                FormulaExpr::and(FormulaExpr::Var(2), FormulaExpr::Var(1)),
            )
        );
        assert_eq!(map.var_of("a"), Some(1));
        assert_eq!(map.var_of("b"), Some(2));
    }

    #[test]
    fn ground_produces_constant_verdicts() {
        let binding = Binding::at(0)
            .with("uptime", IndicatorValue::Bool(true))
            .with("latency_ms", IndicatorValue::Int(700));
        let formula = ground(&nimbus(), &binding).unwrap();
        assert_eq!(formula.num_vars, 0);
        assert_eq!(
            formula.root,
            FormulaExpr::and(FormulaExpr::Const(true), FormulaExpr::Const(false))
        );
        let folded = fold_constants(&formula);
        assert_eq!(folded.root, FormulaExpr::Const(false));
    }

    #[test]
    fn ground_matches_verify_overall() {
        let binding = Binding::at(0)
            .with("uptime", IndicatorValue::Bool(true))
            .with("latency_ms", IndicatorValue::Int(400));
        let sla = nimbus();
        let folded = fold_constants(&ground(&sla, &binding).unwrap());
        let report = crate::verify::verify_at(&sla, &binding).unwrap();
        assert_eq!(folded.root, FormulaExpr::Const(report.overall));
    }

    #[test]
    fn ground_missing_indicator_lists_clauses_in_order() {
        let binding = Binding::at(0);
        let err = ground(&nimbus(), &binding).unwrap_err();
        assert_eq!(
            err,
            Error::MissingIndicator {
                clause_ids: vec!["uptime".to_owned(), "latency".to_owned()]
            }
        );
    }

    #[test]
    fn lift_builds_symbolic_sla() {
        let formula = BoolFormula::new(
            3,
            FormulaExpr::or(
                FormulaExpr::Var(1),
                FormulaExpr::not(FormulaExpr::Var(2)),
            ),
        );
        let (sla, map) = lift(&formula).unwrap();
        assert_eq!(sla.name, "lifted");
        // var 3 is declared but unused; it still gets a clause
        assert_eq!(sla.clauses.len(), 3);
        assert!(sla.clauses.iter().all(Clause::is_symbolic));
        assert_eq!(
            sla.terms,
            SlaExpr::or(
                SlaExpr::clause_ref("v1"),
                SlaExpr::not(SlaExpr::clause_ref("v2")),
            )
        );
        assert_eq!(map.id_of(3), Some("v3"));
    }

    #[test]
    fn lift_rejects_consts_and_bad_vars() {
        let with_const = BoolFormula::new(1, FormulaExpr::and(FormulaExpr::Var(1), FormulaExpr::Const(true)));
        assert_eq!(lift(&with_const).unwrap_err(), Error::ConstInFormula);

        let out_of_range = BoolFormula::new(1, FormulaExpr::Var(2));
        assert_eq!(
            lift(&out_of_range).unwrap_err(),
            Error::VarOutOfRange { var: 2, num_vars: 1 }
        );
    }

    #[test]
    fn lift_then_abstract_restores_formula() {
        let formula = BoolFormula::new(
            2,
            FormulaExpr::and(
                FormulaExpr::not(FormulaExpr::Var(1)),
                FormulaExpr::or(FormulaExpr::Var(2), FormulaExpr::Var(1)),
            ),
        );
        let (sla, _) = lift(&formula).unwrap();
        let (back, map) = abstract_sla(&sla);
        assert_eq!(back, formula);
        assert_eq!(map.id_of(1), Some("v1"));
        assert_eq!(map.id_of(2), Some("v2"));
    }

    #[test]
    fn eval_formula_totals() {
        let formula = BoolFormula::new(
            2,
            FormulaExpr::or(FormulaExpr::Var(1), FormulaExpr::Var(2)),
        );
        let a = Assignment::new(vec![false, true]);
        assert_eq!(eval_formula(&formula, &a), Ok(true));
        let short = Assignment::new(vec![false]);
        assert_eq!(
            eval_formula(&formula, &short),
            Err(Error::UnassignedVariable { var: 2 })
        );
    }

    #[test]
    fn fold_keeps_var_count() {
        let formula = BoolFormula::new(
            2,
            FormulaExpr::and(FormulaExpr::Var(1), FormulaExpr::Const(false)),
        );
        let folded = fold_constants(&formula);
        assert_eq!(folded.num_vars, 2);
        assert_eq!(folded.root, FormulaExpr::Const(false));
    }

    #[test]
    fn fold_identities() {
        let f = |root| fold_constants(&BoolFormula::new(1, root)).root;
        let v = FormulaExpr::Var(1);
        assert_eq!(f(FormulaExpr::and(v.clone(), FormulaExpr::Const(true))), v);
        assert_eq!(
            f(FormulaExpr::or(v.clone(), FormulaExpr::Const(true))),
            FormulaExpr::Const(true)
        );
        assert_eq!(f(FormulaExpr::or(FormulaExpr::Const(false), v.clone())), v);
        assert_eq!(
            f(FormulaExpr::not(FormulaExpr::Const(false))),
            FormulaExpr::Const(true)
        );
        // no constants anywhere: untouched
        assert_eq!(f(FormulaExpr::not(v.clone())), FormulaExpr::not(v));
    }
}
