//! Ideal enumeration and arithmetic against direct constructions.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use proptest::prelude::*;
use semiprime_lab::ideal::{canonical_principal_form, classify_shape, enumerate_ideals};
use semiprime_lab::{Ideal, Ring, TruncatedSeries};

fn ring(gens: &[u32], p: u32) -> Arc<Ring> {
    Ring::from_gens(gens, p).unwrap()
}

type Vector = Vec<u8>;

/// Every element of the span of `rows` over `F_p`.
fn span(rows: &[Vector], p: u8) -> BTreeSet<Vector> {
    let w = rows.first().map_or(0, Vec::len);
    let mut out = BTreeSet::from([vec![0u8; w]]);
    for r in rows {
        let mut next = BTreeSet::new();
        for v in &out {
            for c in 0..p {
                let x: Vector = v.iter().zip(r).map(|(a, b)| (a + c * b) % p).collect();
                next.insert(x);
            }
        }
        out = next;
    }
    out
}

/// Subspaces of `F_p^w` supported on exponents of `S`, with a vector of
/// order `n`, closed under multiplication by `t^s` (`s ∈ S`) modulo
/// `t^(n+w)`. Found by growing spans one vector at a time from `{0}`.
fn brute_force_windows(r: &Ring, n: u32) -> BTreeSet<BTreeSet<Vector>> {
    let s = r.semigroup();
    let w = r.width();
    let p = r.field().p();
    let cols: Vec<usize> = (0..w)
        .filter(|&j| s.contains(n as u64 + j as u64))
        .collect();
    let vectors: Vec<Vector> = (0..(p as usize).pow(cols.len() as u32))
        .map(|mut code| {
            let mut v = vec![0u8; w];
            for &j in &cols {
                v[j] = (code % p as usize) as u8;
                code /= p as usize;
            }
            v
        })
        .filter(|v| v.iter().any(|&c| c != 0))
        .collect();
    let closed = |set: &BTreeSet<Vector>| {
        set.iter().any(|v| v[0] != 0)
            && set.iter().all(|v| {
                (1..w).filter(|&e| s.contains(e as u64)).all(|e| {
                    let mut shifted = vec![0u8; w];
                    shifted[e..].copy_from_slice(&v[..w - e]);
                    set.contains(&shifted)
                })
            })
    };
    let mut out = BTreeSet::new();
    let mut seen = BTreeSet::new();
    let mut stack: Vec<Vec<Vector>> = vec![Vec::new()];
    while let Some(rows) = stack.pop() {
        let sp = span(&rows, p);
        if !seen.insert(sp.clone()) {
            continue;
        }
        if !rows.is_empty() && closed(&sp) {
            out.insert(sp.clone());
        }
        for v in vectors.iter().filter(|v| !sp.contains(*v)) {
            let mut next = rows.clone();
            next.push(v.clone());
            stack.push(next);
        }
    }
    out
}

#[test]
fn enumeration_matches_brute_force_subspaces() {
    for (gens, p, max) in [
        (&[2u32, 5][..], 2u32, 7u32),
        (&[3, 4, 5], 2, 7),
        (&[3, 4, 5], 3, 5),
        (&[2, 5], 3, 5),
    ] {
        let r = ring(gens, p);
        let ideals = enumerate_ideals(&r, max).unwrap();
        let mut by_order: BTreeMap<u32, BTreeSet<BTreeSet<Vector>>> = BTreeMap::new();
        for i in ideals.iter().filter(|i| i.is_proper()) {
            by_order
                .entry(i.order().unwrap())
                .or_default()
                .insert(span(&i.window_rows(), p as u8));
        }
        for n in (1..=max).filter(|&n| r.semigroup().contains(n as u64)) {
            let expected = brute_force_windows(&r, n);
            assert_eq!(
                by_order.remove(&n).unwrap_or_default(),
                expected,
                "{r} order {n}"
            );
        }
        assert!(by_order.is_empty());
    }
}

#[test]
fn principal_forms_match_closed_form_for_two_seven() {
    for p in [2u32, 3] {
        let r = ring(&[2, 7], p);
        let rr = 3usize;
        for n in 6..=8usize {
            let combos = (p as usize).pow(2 * rr as u32);
            for code in 0..combos {
                let mut a = vec![0i64; 2 * rr + 1];
                let mut c = code;
                for item in a.iter_mut().take(2 * rr + 1).skip(1) {
                    *item = (c % p as usize) as i64;
                    c /= p as usize;
                }
                let terms: Vec<(usize, i64)> = (0..=2 * rr)
                    .map(|o| (n + o, if o == 0 { 1 } else { a[o] }))
                    .collect();
                let f = TruncatedSeries::from_terms(r.field(), &terms, n + 2 * rr + 1).unwrap();
                let tag = canonical_principal_form(&r, &f).unwrap();
                let expected: Vec<u8> = common::principal_normal_form(&a, rr, p as i64)
                    .into_iter()
                    .map(|b| b as u8)
                    .collect();
                assert_eq!(tag.params, expected, "F_{p} n {n} a {a:?}");
            }
        }
    }
}

#[test]
fn products_commute_and_associate() {
    let r = ring(&[3, 4, 5], 2);
    let ideals = enumerate_ideals(&r, 5).unwrap();
    for a in &ideals {
        for b in &ideals {
            let ab = a.product(b).unwrap();
            assert_eq!(ab, b.product(a).unwrap());
            for c in &ideals {
                assert_eq!(
                    ab.product(c).unwrap(),
                    a.product(&b.product(c).unwrap()).unwrap()
                );
            }
        }
    }
}

#[test]
fn containment_is_a_partial_order_with_sum_and_intersection_bounds() {
    let r = ring(&[2, 5], 2);
    let mut ideals = enumerate_ideals(&r, 7).unwrap();
    ideals.push(Ideal::zero(&r));
    let sup = |a: &Ideal, b: &Ideal| a.contains(b).unwrap();
    for a in &ideals {
        assert!(sup(a, a));
        for b in &ideals {
            if sup(a, b) && sup(b, a) {
                assert_eq!(a, b);
            }
            let s = a.sum(b).unwrap();
            let m = a.intersect(b).unwrap();
            assert!(sup(&s, a) && sup(&s, b));
            assert!(sup(a, &m) && sup(b, &m));
            for c in &ideals {
                if sup(a, b) && sup(b, c) {
                    assert!(sup(a, c));
                }
                if sup(c, a) && sup(c, b) {
                    assert!(sup(c, &s));
                }
                if sup(a, c) && sup(b, c) {
                    assert!(sup(&m, c));
                }
            }
        }
    }
}

#[test]
fn minimal_generators_are_bounded_by_multiplicity() {
    for (gens, p, bound) in [
        (&[2u32, 5][..], 2, 2),
        (&[2, 5], 3, 2),
        (&[2, 9], 2, 2),
        (&[3, 4, 5], 2, 3),
        (&[3, 4, 5], 3, 3),
    ] {
        let r = ring(gens, p);
        for i in enumerate_ideals(&r, 9)
            .unwrap()
            .iter()
            .filter(|i| i.is_proper())
        {
            let mu = i.min_generators().unwrap();
            assert!((1..=bound).contains(&mu), "{i}: {mu}");
            assert_eq!(mu, i.reduced_generators().len());
            let tag = classify_shape(i).unwrap();
            assert_eq!(tag.expand(&r), *i);
        }
    }
}

fn ring_strategy() -> impl Strategy<Value = Arc<Ring>> {
    prop_oneof![
        Just(ring(&[2, 5], 2)),
        Just(ring(&[2, 5], 3)),
        Just(ring(&[2, 7], 2)),
        Just(ring(&[3, 4, 5], 2)),
        Just(ring(&[3, 4, 5], 3)),
        Just(ring(&[2, 5], 5)),
    ]
}

/// Up to three random elements of `R` with exponents below 16.
fn generators(r: &Ring, raw: &[Vec<(usize, u8)>]) -> Vec<TruncatedSeries> {
    raw.iter()
        .map(|terms| {
            let terms: Vec<(usize, i64)> = terms
                .iter()
                .filter(|(e, _)| r.semigroup().contains(*e as u64))
                .map(|&(e, c)| (e, c as i64))
                .collect();
            TruncatedSeries::from_terms(r.field(), &terms, 32).unwrap()
        })
        .filter(|f| !f.is_zero())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_form_is_independent_of_presentation(
        r in ring_strategy(),
        raw in proptest::collection::vec(proptest::collection::vec((1usize..16, 0u8..5), 1..5), 1..4),
        scale in 1u8..5,
    ) {
        let gens = generators(&r, &raw);
        prop_assume!(!gens.is_empty());
        let i = Ideal::from_generators(&r, &gens).unwrap();
        let mut reversed = gens.clone();
        reversed.reverse();
        let scale = r.field().reduce(scale as i64);
        prop_assume!(scale != 0);
        let scaled: Vec<TruncatedSeries> = reversed.iter().map(|g| g.scale(scale)).collect();
        prop_assert_eq!(&Ideal::from_generators(&r, &scaled).unwrap(), &i);
        // Adding a combination of the generators changes nothing.
        let mut extra = gens.clone();
        extra.push(gens.iter().skip(1).fold(gens[0].clone(), |acc, g| acc.add(g).unwrap()));
        if let Ok(j) = Ideal::from_generators(&r, &extra) {
            prop_assert_eq!(&j, &i);
        }
        if i.is_proper() {
            let reduced = i.reduced_generators();
            prop_assert_eq!(&Ideal::from_generators(&r, &reduced).unwrap(), &i);
            prop_assert_eq!(reduced.len(), i.min_generators().unwrap());
            prop_assert!(reduced.len() <= gens.len());
            for g in &gens {
                prop_assert!(i.contains(&Ideal::principal(&r, g).unwrap()).unwrap());
            }
            prop_assert_eq!(&classify_shape(&i).unwrap().expand(&r), &i);
        }
    }
}
