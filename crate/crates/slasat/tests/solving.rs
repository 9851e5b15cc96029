//! Solver correctness against exhaustive enumeration, agreement between the
//! dedicated 2SAT path and general search, and the round trip between SLAs
//! and bare formulas.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use slasat::bridge::{abstract_sla, eval_formula, lift};
use slasat::solver::{
    classify, solve_2sat, solve_cnf, solve_dpll, to_cnf, CnfClass, SolveConfig, SolveResult,
    SolverKind,
};
use slasat::solve_slas;
use slasat_testkit::{
    cnf_sat_brute, formula_sat_brute, isomorphic, model_satisfies_cnf, php_formula, random_2cnf,
    random_cnf, random_formula, random_planted_2cnf,
};

fn is_sat(result: &SolveResult) -> bool {
    matches!(result, SolveResult::Sat(_))
}

#[test]
fn formula_verdicts_match_truth_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE01);
    let config = SolveConfig::default();
    for _ in 0..550 {
        let formula = random_formula(&mut rng, 12, 6);
        let expected = formula_sat_brute(&formula).is_some();

        let cnf = to_cnf(&formula).expect("no consts generated");
        let (result, _, _) = solve_cnf(&cnf, &config).unwrap();
        assert_eq!(is_sat(&result), expected, "formula {formula:?}");

        if let SolveResult::Sat(assignment) = result {
            // the witness covers aux variables too; the original variables
            // form a prefix, which is all eval_formula reads
            assert_eq!(eval_formula(&formula, &assignment), Ok(true));
        }
    }
}

#[test]
fn two_cnf_verdicts_match_truth_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE02);
    for _ in 0..550 {
        let num_vars = rng.random_range(1..=12);
        let num_clauses = rng.random_range(0..=30);
        let cnf = random_2cnf(&mut rng, num_vars, num_clauses);
        let expected = cnf_sat_brute(&cnf);

        let (result, _) = solve_2sat(&cnf).unwrap();
        assert_eq!(is_sat(&result), expected, "cnf {:?}", cnf.clauses);

        if let SolveResult::Sat(assignment) = result {
            assert!(model_satisfies_cnf(&cnf, &assignment.values));
        }
    }
}

#[test]
fn both_paths_agree_on_two_cnf() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE03);
    let config = SolveConfig::default();
    for _ in 0..250 {
        let num_vars = rng.random_range(1..=10);
        let num_clauses = rng.random_range(0..=25);
        let cnf = random_2cnf(&mut rng, num_vars, num_clauses);
        assert_eq!(classify(&cnf), CnfClass::TwoSat);

        let (fast, _) = solve_2sat(&cnf).unwrap();
        let (general, _) = solve_dpll(&cnf, &config).unwrap();
        assert_eq!(is_sat(&fast), is_sat(&general), "cnf {:?}", cnf.clauses);
    }
}

#[test]
fn cnf_conversion_preserves_satisfiability() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE04);
    let mut checked = 0;
    while checked < 250 {
        let formula = random_formula(&mut rng, 6, 4);
        let cnf = to_cnf(&formula).unwrap();
        if cnf.num_vars > 16 {
            continue; // keep the output-side truth table tractable
        }
        assert_eq!(
            cnf_sat_brute(&cnf),
            formula_sat_brute(&formula).is_some(),
            "formula {formula:?}"
        );
        checked += 1;
    }
}

#[test]
fn lifting_then_abstracting_restores_the_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE05);
    for _ in 0..250 {
        let formula = random_formula(&mut rng, 12, 6);
        let (sla, up_map) = lift(&formula).expect("const-free by construction");
        let (back, down_map) = abstract_sla(&sla);

        assert!(
            isomorphic(&formula, &back),
            "shape lost: {formula:?} vs {back:?}"
        );
        assert_eq!(up_map.len(), formula.num_vars);
        // abstraction numbers by first appearance, so only referenced
        // variables come back; they never exceed the declared count
        assert!(down_map.len() <= up_map.len());
    }
}

#[test]
fn large_two_cnf_instances_solve_quickly() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE06);
    for round in 0..10 {
        let cnf = random_planted_2cnf(&mut rng, 200, 800);
        let start = Instant::now();
        let (result, stats) = solve_2sat(&cnf).unwrap();
        let elapsed = start.elapsed();

        assert!(is_sat(&result), "planted instance must be satisfiable");
        assert!(stats.scc_count > 0);
        assert!(
            elapsed.as_millis() < 100,
            "round {round} took {elapsed:?} for 200 vars / 800 clauses"
        );
    }
}

#[test]
fn pigeonhole_formula_runs_the_general_path_end_to_end() {
    let formula = php_formula(3, 2);
    assert!(
        formula_sat_brute(&formula).is_none(),
        "oracle: three pigeons cannot fit two holes"
    );

    let (sla, _) = lift(&formula).unwrap();
    let report = solve_slas(&[sla], &SolveConfig::default()).unwrap();
    assert_eq!(report.result, SolveResult::Unsat);
    assert_eq!(report.solver_used, SolverKind::Dpll);
}

#[test]
fn dpll_handles_mixed_width_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE07);
    let config = SolveConfig::default();
    for _ in 0..250 {
        let cnf = random_cnf(&mut rng, 10, 14);
        let expected = cnf_sat_brute(&cnf);
        let (result, _) = solve_dpll(&cnf, &config).unwrap();
        assert_eq!(is_sat(&result), expected, "cnf {:?}", cnf.clauses);
        if let SolveResult::Sat(assignment) = result {
            assert!(model_satisfies_cnf(&cnf, &assignment.values));
        }
    }
}
