//! Cross-module coherence: instant verification, grounding, aggregation,
//! and windowed penalties must all tell the same story about the same SLA.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use slasat::bridge::{eval_formula, ground, Assignment};
use slasat::model::aggregate;
use slasat::verify::{verify_at, verify_window};
use slasat_testkit::{
    random_binding, random_sla, random_trace, realizing_binding, window_penalties_brute,
};

#[test]
fn instant_verdict_equals_grounded_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0001);
    for i in 0..250 {
        let sla = random_sla(&mut rng, &format!("svc{i}"));
        let binding = random_binding(&mut rng, &[&sla], i);

        let report = verify_at(&sla, &binding).expect("binding covers all metrics");
        let grounded = ground(&sla, &binding).expect("same coverage");
        let value = eval_formula(&grounded, &Assignment::new(vec![])).expect("no variables left");

        assert_eq!(
            report.overall, value,
            "verify_at and ground/eval disagree on {} at t={}",
            sla.name, i
        );
    }
}

#[test]
fn per_clause_verdicts_follow_forced_patterns() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0002);
    for i in 0..120 {
        let sla = random_sla(&mut rng, &format!("svc{i}"));
        let wanted: HashMap<String, bool> = sla
            .clauses
            .iter()
            .map(|c| (c.id.clone(), rng.random_bool(0.5)))
            .collect();
        let binding = realizing_binding(&sla, 0, |id| wanted[id]);

        let report = verify_at(&sla, &binding).expect("full coverage");
        for verdict in &report.verdicts {
            assert_eq!(verdict.satisfied, wanted[&verdict.clause_id]);
        }
        let expected = sla.terms.eval(&|id: &str| wanted[id]);
        assert_eq!(report.overall, expected);
    }
}

#[test]
fn aggregate_verdict_is_conjunction_of_parts() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0003);
    for i in 0..120 {
        let a = random_sla(&mut rng, &format!("alpha{i}"));
        let b = random_sla(&mut rng, &format!("beta{i}"));
        let combined = aggregate(&[a.clone(), b.clone()], "fleet").expect("valid parts");

        // metrics are namespaced by SLA name, so one binding serves all three
        let binding = random_binding(&mut rng, &[&a, &b], 0);
        let va = verify_at(&a, &binding).unwrap().overall;
        let vb = verify_at(&b, &binding).unwrap().overall;
        let vc = verify_at(&combined, &binding).unwrap().overall;
        assert_eq!(vc, va && vb);
    }
}

#[test]
fn aggregation_nesting_does_not_change_verdicts() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0004);
    for i in 0..40 {
        let a = random_sla(&mut rng, &format!("a{i}"));
        let b = random_sla(&mut rng, &format!("b{i}"));
        let c = random_sla(&mut rng, &format!("c{i}"));

        let flat = aggregate(&[a.clone(), b.clone(), c.clone()], "flat").unwrap();
        let left = aggregate(&[a.clone(), b.clone()], "pair").unwrap();
        let nested = aggregate(&[left, c.clone()], "nested").unwrap();

        let binding = random_binding(&mut rng, &[&a, &b, &c], 0);
        assert_eq!(
            verify_at(&flat, &binding).unwrap().overall,
            verify_at(&nested, &binding).unwrap().overall,
        );
    }
}

#[test]
fn aggregate_namespaces_every_clause_id() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0005);
    let a = random_sla(&mut rng, "east");
    let b = random_sla(&mut rng, "west");
    let combined = aggregate(&[a.clone(), b.clone()], "global").unwrap();

    assert_eq!(combined.clauses.len(), a.clauses.len() + b.clauses.len());
    for clause in &combined.clauses {
        assert!(
            clause.id.starts_with("east.") || clause.id.starts_with("west."),
            "unexpected id {}",
            clause.id
        );
    }
}

#[test]
fn window_penalties_match_direct_recomputation() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0006);
    for i in 0..120 {
        let sla = random_sla(&mut rng, &format!("svc{i}"));
        let trace = random_trace(&mut rng, &sla, 60);
        let t1 = rng.random_range(10..=60);
        let step = rng.random_range(1..=4);

        let report = verify_window(&sla, &trace, 0, t1, step).expect("coverage from t=0");
        let (total, per_clause) = window_penalties_brute(&sla, &trace, 0, t1, step);

        assert_eq!(report.total_penalty, total, "total for {}", sla.name);
        assert_eq!(report.clauses.len(), per_clause.len());
        for (clause_report, (id, penalty)) in report.clauses.iter().zip(&per_clause) {
            assert_eq!(&clause_report.clause_id, id);
            assert_eq!(clause_report.penalty, *penalty, "clause {id} of {}", sla.name);
        }

        let expected_steps = (t1 / step) + 1;
        assert_eq!(report.steps.len() as u64, expected_steps);
    }
}

#[test]
fn window_step_verdicts_match_instant_checks() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0007);
    for i in 0..40 {
        let sla = random_sla(&mut rng, &format!("svc{i}"));
        let trace = random_trace(&mut rng, &sla, 30);
        let report = verify_window(&sla, &trace, 0, 30, 3).unwrap();

        for sv in &report.steps {
            let binding = slasat::verify::bind(&trace, sv.t);
            let instant = verify_at(&sla, &binding).unwrap();
            assert_eq!(sv.overall, instant.overall, "t={} of {}", sv.t, sla.name);
        }
    }
}
