//! Polynomial-time 2SAT via the implication graph.
//!
//! Clause (a ∨ b) contributes the implications ¬a→b and ¬b→a; a unit (a)
//! contributes ¬a→a. The instance is unsatisfiable exactly when some
//! variable shares a strongly connected component with its own negation;
//! otherwise picking, for each variable, the literal whose component lies
//! later in topological order yields a satisfying assignment. Components
//! come from an iterative Tarjan pass, whose completion order *is* reverse
//! topological order, so "later in topological order" means a smaller
//! component id.

use super::{Cnf, SolveResult, SolveStats};
use crate::bridge::Assignment;
use crate::error::{Error, Result};

/// Graph node for a literal: variable `v` is node `2(v-1)`, its negation
/// node `2(v-1)+1`; complementing a literal is `node ^ 1`.
fn node(lit: i32) -> usize {
    let v = (lit.unsigned_abs() - 1) as usize;
    if lit > 0 {
        2 * v
    } else {
        2 * v + 1
    }
}

/// Tarjan strongly connected components, iterative to keep large chains of
/// implications off the call stack. Returns per-node component ids in
/// completion order and the component count.
fn tarjan(adj: &[Vec<u32>]) -> (Vec<u32>, u32) {
    const UNSET: u32 = u32::MAX;
    let n = adj.len();
    let mut index = vec![UNSET; n];
    let mut low = vec![0u32; n];
    let mut comp = vec![UNSET; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut frames: Vec<(u32, usize)> = Vec::new();
    let mut next_index = 0u32;
    let mut comp_count = 0u32;

    for start in 0..n as u32 {
        if index[start as usize] != UNSET {
            continue;
        }
        index[start as usize] = next_index;
        low[start as usize] = next_index;
        next_index += 1;
        stack.push(start);
        on_stack[start as usize] = true;
        frames.push((start, 0));

        while let Some(frame) = frames.last_mut() {
            let v = frame.0 as usize;
            if let Some(&w) = adj[v].get(frame.1) {
                frame.1 += 1;
                let w = w as usize;
                if index[w] == UNSET {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w as u32);
                    on_stack[w] = true;
                    frames.push((w as u32, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(parent) = frames.last() {
                    let p = parent.0 as usize;
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("scc stack") as usize;
                        on_stack[w] = false;
                        comp[w] = comp_count;
                        if w == v {
                            break;
                        }
                    }
                    comp_count += 1;
                }
            }
        }
    }
    (comp, comp_count)
}

/// Decides a 2-CNF instance in time linear in variables plus clauses.
///
/// An empty clause short-circuits to Unsat. Rejects clauses with more than
/// two literals with [`Error::NotTwoCnf`].
pub fn solve_2sat(cnf: &Cnf) -> Result<(SolveResult, SolveStats)> {
    cnf.check()?;
    for (i, clause) in cnf.clauses.iter().enumerate() {
        if clause.len() > 2 {
            return Err(Error::NotTwoCnf {
                clause_index: i,
                literals: clause.len(),
            });
        }
    }

    let mut stats = SolveStats::default();
    if cnf.clauses.iter().any(|c| c.is_empty()) {
        return Ok((SolveResult::Unsat, stats));
    }

    let n = 2 * cnf.num_vars as usize;
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    for clause in &cnf.clauses {
        let (a, b) = match clause[..] {
            [a] => (a, a),
            [a, b] => (a, b),
            _ => unreachable!("lengths checked above"),
        };
        adj[node(a) ^ 1].push(node(b) as u32);
        adj[node(b) ^ 1].push(node(a) as u32);
    }

    let (comp, comp_count) = tarjan(&adj);
    stats.scc_count = comp_count as u64;

    let mut values = Vec::with_capacity(cnf.num_vars as usize);
    for v in 0..cnf.num_vars as usize {
        let (pos, neg) = (comp[2 * v], comp[2 * v + 1]);
        if pos == neg {
            return Ok((SolveResult::Unsat, stats));
        }
        values.push(pos < neg);
    }

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
        "2sat assignment must satisfy every clause"
    );
    Ok((SolveResult::Sat(assignment), stats))
}
