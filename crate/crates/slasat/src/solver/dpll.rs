//! Complete DPLL search for general CNF.
//!
//! Each search level runs unit propagation and pure-literal elimination to
//! a joint fixpoint, then branches on the lowest-indexed variable still
//! appearing in an open clause, trying true first. Branching is counted
//! against the configured decision budget; crossing it abandons the run
//! with `Aborted(DecisionLimit)` rather than an incomplete verdict.

use super::{AbortReason, Cnf, SolveConfig, SolveResult, SolveStats};
use crate::bridge::Assignment;
use crate::error::Result;

enum Outcome {
    Sat,
    Exhausted,
    Aborted,
}

struct Search<'a> {
    clauses: &'a [Vec<i32>],
    assign: Vec<Option<bool>>,
    stats: SolveStats,
    decision_limit: u64,
}

impl Search<'_> {
    fn lit_value(&self, lit: i32) -> Option<bool> {
        let v = (lit.unsigned_abs() - 1) as usize;
        self.assign[v].map(|b| if lit > 0 { b } else { !b })
    }

    fn clause_satisfied(&self, clause: &[i32]) -> bool {
        clause.iter().any(|&lit| self.lit_value(lit) == Some(true))
    }

    fn set(&mut self, var: usize, value: bool, trail: &mut Vec<usize>) {
        debug_assert!(self.assign[var].is_none());
        self.assign[var] = Some(value);
        trail.push(var);
    }

    fn set_lit(&mut self, lit: i32, trail: &mut Vec<usize>) {
        self.set((lit.unsigned_abs() - 1) as usize, lit > 0, trail);
    }

    fn undo(&mut self, trail: &[usize]) {
        for &var in trail {
            self.assign[var] = None;
        }
    }

    /// Unit propagation and pure-literal elimination to a joint fixpoint.
    /// Returns false on conflict (some clause has every literal false).
    fn propagate(&mut self, trail: &mut Vec<usize>) -> bool {
        loop {
            // units first: assign the lone literal of any one-open-literal clause
            loop {
                let mut any_unit = false;
                for ci in 0..self.clauses.len() {
                    let clause = &self.clauses[ci];
                    let mut satisfied = false;
                    let mut open_lit = None;
                    let mut open_count = 0;
                    for &lit in clause {
                        match self.lit_value(lit) {
                            Some(true) => {
                                satisfied = true;
                                break;
                            }
                            Some(false) => {}
                            None => {
                                open_count += 1;
                                open_lit = Some(lit);
                            }
                        }
                    }
                    if satisfied {
                        continue;
                    }
                    match open_count {
                        0 => return false,
                        1 => {
                            self.set_lit(open_lit.expect("counted"), trail);
                            self.stats.propagations += 1;
                            any_unit = true;
                        }
                        _ => {}
                    }
                }
                if !any_unit {
                    break;
                }
            }

            // pure literals: a variable occurring with one polarity across
            // the open clauses can safely take that polarity
            let n = self.assign.len();
            let mut pos = vec![false; n];
            let mut neg = vec![false; n];
            for clause in self.clauses {
                if self.clause_satisfied(clause) {
                    continue;
                }
                for &lit in clause {
                    if self.lit_value(lit).is_none() {
                        let v = (lit.unsigned_abs() - 1) as usize;
                        if lit > 0 {
                            pos[v] = true;
                        } else {
                            neg[v] = true;
                        }
                    }
                }
            }
            let mut any_pure = false;
            for v in 0..n {
                if self.assign[v].is_none() {
                    let value = match (pos[v], neg[v]) {
                        (true, false) => true,
                        (false, true) => false,
                        _ => continue,
                    };
                    self.set(v, value, trail);
                    self.stats.propagations += 1;
                    any_pure = true;
                    // stop after one: this assignment satisfies clauses,
                    // which may strip the remaining candidates of their
                    // occurrences — they must then stay unassigned
                    break;
                }
            }
            // a pure assignment only satisfies clauses, so it cannot
            // conflict or create units — but it can expose new pures
            if !any_pure {
                return true;
            }
        }
    }

    /// Lowest-indexed unassigned variable appearing in an open clause.
    /// None means every clause is satisfied.
    fn branch_var(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for clause in self.clauses {
            let mut satisfied = false;
            let mut min_open: Option<usize> = None;
            for &lit in clause {
                match self.lit_value(lit) {
                    Some(true) => {
                        satisfied = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        let v = (lit.unsigned_abs() - 1) as usize;
                        min_open = Some(min_open.map_or(v, |m| m.min(v)));
                    }
                }
            }
            if !satisfied {
                if let Some(v) = min_open {
                    best = Some(best.map_or(v, |b| b.min(v)));
                }
            }
        }
        best
    }

    fn dive(&mut self) -> Outcome {
        let mut trail = Vec::new();
        if !self.propagate(&mut trail) {
            self.undo(&trail);
            return Outcome::Exhausted;
        }
        let Some(var) = self.branch_var() else {
            return Outcome::Sat; // keep the trail: it is part of the model
        };
        for value in [true, false] {
            if self.stats.decisions >= self.decision_limit {
                self.undo(&trail);
                return Outcome::Aborted;
            }
            self.stats.decisions += 1;
            let mut branch_trail = Vec::new();
            self.set(var, value, &mut branch_trail);
            match self.dive() {
                Outcome::Sat => return Outcome::Sat,
                Outcome::Aborted => {
                    self.undo(&branch_trail);
                    self.undo(&trail);
                    return Outcome::Aborted;
                }
                Outcome::Exhausted => self.undo(&branch_trail),
            }
        }
        self.undo(&trail);
        Outcome::Exhausted
    }
}

/// Complete DPLL over any CNF. Sat assignments are total — variables the
/// search never constrained default to false — and Unsat means the search
/// space was exhausted, not abandoned.
pub fn solve_dpll(cnf: &Cnf, config: &SolveConfig) -> Result<(SolveResult, SolveStats)> {
    cnf.check()?;
    let mut search = Search {
        clauses: &cnf.clauses,
        assign: vec![None; cnf.num_vars as usize],
        stats: SolveStats::default(),
        decision_limit: config.decision_limit,
    };
    let result = match search.dive() {
        Outcome::Sat => {
            let values: Vec<bool> = search.assign.iter().map(|v| v.unwrap_or(false)).collect();
            let assignment = Assignment::new(values);
            debug_assert!(
                cnf.clauses.iter().all(|clause| clause.iter().any(|&lit| {
                    let val = assignment.get(lit.unsigned_abs()).expect("total");
                    if lit > 0 {
                        val
                    } else {
                        !val
                    }
                })),
                "dpll assignment must satisfy every clause"
            );
            SolveResult::Sat(assignment)
        }
        Outcome::Exhausted => SolveResult::Unsat,
        Outcome::Aborted => SolveResult::Aborted(AbortReason::DecisionLimit),
    };
    Ok((result, search.stats))
}
