use super::*;
use crate::closure::{check_axioms, Axiom};

fn ring(gens: &[u32], p: u32) -> Arc<Ring> {
    Ring::from_gens(gens, p).unwrap()
}

#[test]
fn dvr_semiprime_chain_counts() {
    assert_eq!(search_semiprime_chain(4, 2).unwrap().tables.len(), 10);
    assert_eq!(search_semiprime_chain(0, 0).unwrap().tables.len(), 2);
}

#[test]
fn dvr_semiprime_chain_contains_f_and_g() {
    let d = Ring::dvr(2).unwrap();
    let res = search_semiprime_chain(4, 2).unwrap();
    for m in 0..=4 {
        assert!(res
            .position_of(&ClosureOperation::dvr_f_m(&d, m).unwrap())
            .is_some());
        assert!(res
            .position_of(&ClosureOperation::dvr_g_m(&d, m).unwrap())
            .is_some());
    }
}

#[test]
fn dvr_prime_is_identity() {
    let d = Ring::dvr(2).unwrap();
    let p = SearchProblem::dvr_chain(&d, 8, SearchMode::Prime, 2).unwrap();
    assert!(search_prime(&p).unwrap().is_identity_only());
}

#[test]
fn two_five_prime_is_identity() {
    let r = ring(&[2, 5], 2);
    let p = SearchProblem::lattice(&r, 8, SearchMode::Prime, 2).with_explain(true);
    let res = search_prime(&p).unwrap();
    assert!(res.is_identity_only(), "{:?}", res.summary().operations);
    let text = explain_pruning(&res);
    assert!(text.contains("principal seeding"));
}

#[test]
fn three_four_five_prime_contains_fc() {
    let r = ring(&[3, 4, 5], 2);
    let p = SearchProblem::lattice(&r, 6, SearchMode::Prime, 2);
    let res = search_prime(&p).unwrap();
    let fc = ClosureOperation::fc_345(&r).unwrap();
    assert!(res.position_of(&fc).is_some());
    assert!(res.position_of(&ClosureOperation::identity(&r)).is_some());
    for op in res.operations() {
        let rep = check_axioms(&op, &res.ideals, &Axiom::ALL[..5]).unwrap();
        assert!(rep.passed(), "{}", op.name());
    }
}

#[test]
fn budget_is_enforced() {
    let r = ring(&[3, 4, 5], 2);
    let p = SearchProblem::lattice(&r, 6, SearchMode::Semiprime, 0).with_budget(5);
    assert!(matches!(search(&p), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn prime_mode_required() {
    let d = Ring::dvr(2).unwrap();
    let p = SearchProblem::dvr_chain(&d, 2, SearchMode::Semiprime, 0).unwrap();
    assert!(search_prime(&p).is_err());
}
