use super::*;
use crate::ideal::enumerate_ideals;
use crate::series::TruncatedSeries;

fn ring(gens: &[u32], p: u32) -> Arc<Ring> {
    Ring::from_gens(gens, p).unwrap()
}

fn ideal(r: &Arc<Ring>, text: &str) -> Ideal {
    Ideal::parse(r, text).unwrap()
}

fn with_zero(mut v: Vec<Ideal>) -> Vec<Ideal> {
    let z = Ideal::zero(v[0].ring());
    v.push(z);
    v
}

#[test]
fn builtin_examples() {
    let r = ring(&[3, 4, 5], 2);
    let fc = ClosureOperation::fc_345(&r).unwrap();
    assert_eq!(
        fc.apply(&ideal(&r, "t^3, t^4+t^5")).unwrap(),
        ideal(&r, "t^3, t^4, t^5")
    );
    let p = ideal(&r, "t^3+t^4+t^5");
    assert_eq!(fc.apply(&p).unwrap(), p);
    assert!(fc.apply(&Ideal::zero(&r)).unwrap().is_zero());

    let d = Ring::dvr(2).unwrap();
    let f2 = ClosureOperation::builtin("dvr_f_m:2", &d).unwrap();
    assert_eq!(f2.apply(&ideal(&d, "t^5")).unwrap(), ideal(&d, "t^2"));
    assert_eq!(f2.apply(&ideal(&d, "t")).unwrap(), ideal(&d, "t"));
    assert!(f2.apply(&Ideal::zero(&d)).unwrap().is_zero());
    let g2 = ClosureOperation::builtin("dvr_g_m(2)", &d).unwrap();
    assert_eq!(g2.apply(&Ideal::zero(&d)).unwrap(), ideal(&d, "t^2"));

    let i = ideal(&r, "t^4+t^6, t^5");
    assert_eq!(ClosureOperation::identity(&r).apply(&i).unwrap(), i);
}

#[test]
fn builtin_errors() {
    let r = ring(&[2, 5], 2);
    assert!(matches!(
        ClosureOperation::fc_345(&r),
        Err(Error::WrongRing { .. })
    ));
    assert!(matches!(
        ClosureOperation::builtin("dvr_f_m:1", &r),
        Err(Error::WrongRing { .. })
    ));
    assert!(matches!(
        ClosureOperation::builtin("nope", &r),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn table_domain_gap() {
    let r = ring(&[2, 5], 2);
    let ideals = enumerate_ideals(&r, 4).unwrap();
    let t = ClosureOperation::identity(&r).restrict_to(&ideals).unwrap();
    assert!(matches!(
        t.apply(&ideal(&r, "t^9")),
        Err(Error::DomainGap(_))
    ));
    let more = enumerate_ideals(&r, 6).unwrap();
    assert!(matches!(
        check_axioms(&t, &more, &[Axiom::Extensive]),
        Err(Error::DomainGap(_))
    ));
}

#[test]
fn table_ops_skip_out_of_domain_instances() {
    let r = ring(&[2, 5], 2);
    let ideals = enumerate_ideals(&r, 6).unwrap();
    let t = ClosureOperation::identity(&r).restrict_to(&ideals).unwrap();
    let rep = check_axioms(&t, &ideals, &[Axiom::Product]).unwrap();
    let res = rep.result(Axiom::Product).unwrap();
    assert!(res.passed);
    assert!(res.skipped > 0);
    assert_eq!(
        res.checked + res.skipped,
        (ideals.len() * (ideals.len() + 1) / 2) as u64
    );
}

#[test]
fn identity_passes_everything() {
    let r = ring(&[2, 5], 2);
    let ideals = with_zero(enumerate_ideals(&r, 6).unwrap());
    let rep = check_axioms(&ClosureOperation::identity(&r), &ideals, &Axiom::ALL).unwrap();
    assert!(rep.passed());
    assert!(rep.results.iter().all(|r| r.skipped == 0));
}

#[test]
fn integral_closure_is_semiprime_not_prime() {
    let r = ring(&[2, 5], 2);
    let ideals = enumerate_ideals(&r, 8).unwrap();
    let op = ClosureOperation::integral_closure(&r);
    let rep = check_axioms(
        &op,
        &ideals,
        &[
            Axiom::Extensive,
            Axiom::Monotone,
            Axiom::Idempotent,
            Axiom::Product,
            Axiom::PrincipalScaling,
        ],
    )
    .unwrap();
    for a in [
        Axiom::Extensive,
        Axiom::Monotone,
        Axiom::Idempotent,
        Axiom::Product,
    ] {
        assert!(rep.result(a).unwrap().passed, "{a}");
    }
    let scaling = rep.result(Axiom::PrincipalScaling).unwrap();
    assert!(!scaling.passed);
    for w in &scaling.witnesses {
        assert!(w.replay(&op).unwrap());
    }
    let w = Violation {
        axiom: Axiom::PrincipalScaling,
        inputs: vec![ideal(&r, "t^5"), ideal(&r, "t^2")],
        lhs: ideal(&r, "t^7, t^8"),
        rhs: ideal(&r, "t^7, t^10"),
    };
    assert!(w.replay(&op).unwrap());
    assert!(matches!(
        sakuma_consistency(&op, &ideals),
        Err(Error::PreconditionNotMet(_))
    ));
}

#[test]
fn sakuma_on_identity() {
    let r = ring(&[3, 4, 5], 2);
    let ideals = enumerate_ideals(&r, 6).unwrap();
    let rep = sakuma_consistency(&ClosureOperation::identity(&r), &ideals).unwrap();
    assert!(rep.consequences.passed());
}

#[test]
fn dvr_f_m_fails_scaling() {
    let d = Ring::dvr(2).unwrap();
    let chain = dvr_ideal_chain(&d, 6, true).unwrap();
    let op = ClosureOperation::dvr_f_m(&d, 2).unwrap();
    let w = Violation {
        axiom: Axiom::PrincipalScaling,
        inputs: vec![ideal(&d, "t"), ideal(&d, "t^3")],
        lhs: ideal(&d, "t^2"),
        rhs: ideal(&d, "t^3"),
    };
    assert!(w.replay(&op).unwrap());
    match sakuma_consistency(&op, &chain) {
        Err(Error::PreconditionNotMet(msg)) => assert!(msg.contains("PRINCIPAL_SCALING")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn axiom_list_parsing() {
    assert_eq!(Axiom::parse_list("1-3,5").unwrap().len(), 4);
    assert_eq!(Axiom::parse_list("8").unwrap(), vec![Axiom::Intersection]);
    assert!(Axiom::parse_list("0").is_err());
    assert!(Axiom::parse_list("3-1").is_err());
}

#[test]
fn dvr_fractional_witnesses() {
    let d = Ring::dvr(2).unwrap();
    let chain = FractionalChain::dvr(&d, 5).unwrap();
    let bounded = FractionalCandidate::dvr_bounded(&chain, 2, 0, false);
    match fractional_violation(&chain, &bounded, 2).unwrap() {
        FractionalVerdict::Witness(w) => {
            assert_eq!((w.kind, w.i, w.j), (WitnessKind::BoundedTail, 3, -1));
            assert_eq!(w.product, FractionalIdeal::dvr_power(&d, 1));
            assert_eq!(w.target, FractionalIdeal::dvr_power(&d, 2));
            assert!(w.replay(&bounded));
        }
        v => panic!("{v:?}"),
    }
    let enlarge = FractionalCandidate::dvr_enlarging(&chain, 1);
    match fractional_violation(&chain, &enlarge, 2).unwrap() {
        FractionalVerdict::Witness(w) => {
            assert_eq!((w.kind, w.i, w.j), (WitnessKind::EnlargesRing, 0, 0));
            assert_eq!(w.product, FractionalIdeal::dvr_power(&d, -2));
        }
        v => panic!("{v:?}"),
    }
    let id = FractionalCandidate::identity(&chain);
    assert!(matches!(
        fractional_violation(&chain, &id, 2).unwrap(),
        FractionalVerdict::CertifiedIdentityOnly
    ));
}

#[test]
fn element_chain_members() {
    let r = ring(&[2, 5], 2);
    let s = TruncatedSeries::parse("t^2", r.field(), 6).unwrap();
    let chain = FractionalChain::element(&r, &s, 5).unwrap();
    assert_eq!(
        chain.member(0),
        FractionalIdeal::from_ideal(&Ideal::unit(&r))
    );
    assert_eq!(
        chain.member(2),
        FractionalIdeal::from_ideal(&ideal(&r, "t^4"))
    );
    let inv = chain.member(-1);
    assert_eq!(inv.order(), Some(-2));
    assert_eq!(inv.product(&chain.member(1)), chain.member(0));
    assert!(inv.contains(&chain.member(0)));
    assert!(!chain.member(0).contains(&inv));
}

#[test]
fn element_chain_candidates_are_refuted() {
    let r = ring(&[2, 5], 2);
    let s = TruncatedSeries::parse("t^2", r.field(), 6).unwrap();
    let chain = FractionalChain::element(&r, &s, 5).unwrap();
    let ideals = enumerate_ideals(&r, 8).unwrap();
    let cands = element_chain_candidates(&chain, &ideals);
    assert!(!cands.is_empty());
    for c in &cands {
        match fractional_violation(&chain, c, 2).unwrap() {
            FractionalVerdict::Witness(w) => assert!(w.replay(c), "{}", c.name),
            v => panic!("{}: {v:?}", c.name),
        }
    }
}

#[test]
fn chain_search_small() {
    // Depth 0 with no margin: the window {C_0} admits only the identity.
    assert_eq!(chain_semiprime_operations(0, 0).unwrap(), vec![vec![0]]);
    assert!(certify_identity_only(6, 2).unwrap());
    assert!(chain_semiprime_operations(8, 4).is_err());
}
