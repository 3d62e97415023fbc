//! Fractional-ideal chains and explicit refutations of bounded candidates.
//!
//! The chains used here are `P^i` in `K[[t]]` and `s^i R` for a nonunit
//! `s ∈ R`. Both are totally ordered and multiply by adding indices, so the
//! exhaustive semiprime search on a chain only needs index arithmetic.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::window::{self, Poly, Window};
use crate::ideal::Ideal;
use crate::ring::Ring;
use crate::series::TruncatedSeries;

/// A fractional ideal of `R`: an `R`-submodule of `K((t))` with a lower
/// bound on orders, in the same window form as ideals.
#[derive(Clone)]
pub struct FractionalIdeal {
    ring: Arc<Ring>,
    window: Option<Window>,
}

impl PartialEq for FractionalIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.window == other.window
    }
}

impl Eq for FractionalIdeal {}

impl FractionalIdeal {
    pub fn from_ideal(ideal: &Ideal) -> Self {
        Self {
            ring: ideal.ring().clone(),
            window: ideal.window(),
        }
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self {
            ring: ring.clone(),
            window: None,
        }
    }

    /// `t^k K[[t]]`, a power of the maximal ideal of `K[[t]]` (any sign of `k`).
    pub fn dvr_power(ring: &Arc<Ring>, k: i64) -> Self {
        Self {
            ring: ring.clone(),
            window: Some(Window::filtered(ring, k, |_| true)),
        }
    }

    pub fn order(&self) -> Option<i64> {
        self.window.as_ref().map(|w| w.order)
    }

    pub fn product(&self, other: &Self) -> Self {
        let window = match (&self.window, &other.window) {
            (Some(a), Some(b)) => Some(window::product(&self.ring, a, b)),
            _ => None,
        };
        Self {
            ring: self.ring.clone(),
            window,
        }
    }

    pub fn sum(&self, other: &Self) -> Self {
        let window = match (&self.window, &other.window) {
            (Some(a), Some(b)) => Some(window::sum(&self.ring, a, b)),
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        Self {
            ring: self.ring.clone(),
            window,
        }
    }

    /// `other ⊆ self`
    pub fn contains(&self, other: &Self) -> bool {
        match (&self.window, &other.window) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => window::contains(&self.ring, a, b),
        }
    }
}

impl fmt::Debug for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(w) = &self.window else {
            return f.write_str("(0)");
        };
        f.write_str("(")?;
        for (i, r) in crate::ideal::reduced_rows(&self.ring, w).iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            crate::series::format_terms(
                f,
                r.iter().enumerate().map(|(j, &c)| (w.order + j as i64, c)),
            )?;
        }
        f.write_str(")")
    }
}

impl Serialize for FractionalIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainBase {
    /// `P^i` in `K[[t]]`.
    Dvr,
    /// `s^i R` for the given nonunit `s`.
    Element(TruncatedSeries),
}

/// Members `C_i`, `|i| <= depth`, with `C_i ⊇ C_j` iff `i <= j` and
/// `C_i C_j = C_(i+j)`.
#[derive(Debug, Clone)]
pub struct FractionalChain {
    ring: Arc<Ring>,
    base: ChainBase,
    depth: u32,
    /// `s = t^n u` with `u` a unit of `K[[t]]`, stored modulo `t^width`.
    lead: i64,
    unit: Option<TruncatedSeries>,
}

impl FractionalChain {
    pub fn dvr(ring: &Arc<Ring>, depth: u32) -> Result<Self> {
        if !ring.is_dvr() {
            return Err(Error::WrongRing {
                op: "DVR chain".into(),
                required: "K[[t]]".into(),
            });
        }
        Ok(Self {
            ring: ring.clone(),
            base: ChainBase::Dvr,
            depth,
            lead: 1,
            unit: None,
        })
    }

    /// The chain `s^i R` for a nonzero nonunit `s ∈ R`.
    pub fn element(ring: &Arc<Ring>, s: &TruncatedSeries, depth: u32) -> Result<Self> {
        let n = match s.order() {
            None => return Err(Error::ZeroInput),
            Some(0) => return Err(Error::UnitInput),
            Some(n) => n,
        };
        if s.support().any(|e| !ring.in_s(e as i64)) {
            return Err(Error::InvalidArgument(format!("{s} is not in the ring")));
        }
        let w = ring.width();
        if s.bound() < n + w {
            return Err(Error::InsufficientPrecision {
                bound: s.bound(),
                needed: n + w,
            });
        }
        let u = TruncatedSeries::from_coeffs(
            ring.field(),
            s.coeffs()[n..n + w].iter().map(|&c| c as i64),
        );
        Ok(Self {
            ring: ring.clone(),
            base: ChainBase::Element(s.clone()),
            depth,
            lead: n as i64,
            unit: Some(u),
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn base(&self) -> &ChainBase {
        &self.base
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        let d = self.depth as i64;
        -d..=d
    }

    pub fn in_range(&self, i: i64) -> bool {
        i.abs() <= self.depth as i64
    }

    /// `C_i` for any integer `i` (not only those inside the chain window).
    pub fn member(&self, i: i64) -> FractionalIdeal {
        let Some(u) = &self.unit else {
            return FractionalIdeal::dvr_power(&self.ring, i);
        };
        let w = self.ring.width();
        let base = if i >= 0 {
            u.clone()
        } else {
            u.invert_unit().expect("leading coefficient is nonzero")
        };
        let mut v = TruncatedSeries::one(self.ring.field(), w);
        for _ in 0..i.unsigned_abs() {
            v = v.mul_capped(&base, w).expect("same field");
        }
        let poly = Poly {
            lo: i * self.lead,
            coeffs: v.coeffs().to_vec(),
        };
        FractionalIdeal {
            ring: self.ring.clone(),
            window: window::generate(&self.ring, &[poly]),
        }
    }
}

/// A map on the members of a chain, given by its values.
#[derive(Debug, Clone)]
pub struct FractionalCandidate {
    pub name: String,
    values: BTreeMap<i64, FractionalIdeal>,
}

impl FractionalCandidate {
    pub fn new(name: impl Into<String>, values: BTreeMap<i64, FractionalIdeal>) -> Self {
        Self {
            name: name.into(),
            values,
        }
    }

    pub fn from_fn(
        name: impl Into<String>,
        chain: &FractionalChain,
        f: impl Fn(i64) -> FractionalIdeal,
    ) -> Self {
        Self::new(name, chain.indices().map(|i| (i, f(i))).collect())
    }

    pub fn identity(chain: &FractionalChain) -> Self {
        Self::from_fn("identity", chain, |i| chain.member(i))
    }

    /// `P^i ↦ P^(min(i, m) - shift)`; with `identity_on_negatives` the
    /// negative powers are left fixed instead.
    pub fn dvr_bounded(
        chain: &FractionalChain,
        m: i64,
        shift: i64,
        identity_on_negatives: bool,
    ) -> Self {
        let name = format!(
            "bounded:m={m},shift={shift}{}",
            if identity_on_negatives {
                ",fix-negatives"
            } else {
                ""
            }
        );
        Self::from_fn(name, chain, |i| {
            if identity_on_negatives && i < 0 {
                chain.member(i)
            } else {
                chain.member(i.min(m) - shift)
            }
        })
    }

    /// `P^i ↦ P^(i - k)`, which enlarges `R` to `P^-k`.
    pub fn dvr_enlarging(chain: &FractionalChain, k: i64) -> Self {
        Self::from_fn(format!("enlarge:k={k}"), chain, |i| chain.member(i - k))
    }

    /// `s^i R ↦ I` for `i >= n` and `s^i R ↦ s^i R + I` below `n`.
    pub fn element_bounded(chain: &FractionalChain, n: i64, ideal: &Ideal) -> Self {
        let i_frac = FractionalIdeal::from_ideal(ideal);
        Self::from_fn(format!("bounded:n={n},I={ideal}"), chain, |i| {
            if i >= n {
                i_frac.clone()
            } else {
                chain.member(i).sum(&i_frac)
            }
        })
    }

    pub fn value(&self, i: i64) -> Option<&FractionalIdeal> {
        self.values.get(&i)
    }

    fn is_identity_on(&self, chain: &FractionalChain) -> bool {
        chain
            .indices()
            .all(|i| self.values.get(&i) == Some(&chain.member(i)))
    }
}

/// The 50 bounded candidates on a DVR chain: tail value `P^(m - shift)` from
/// index `m`, `m ∈ 1..=5`, `shift ∈ 0..=4`, with negative powers either
/// following the same rule or left fixed. Requires depth at least 6.
pub fn bounded_dvr_candidates(chain: &FractionalChain) -> Result<Vec<FractionalCandidate>> {
    if chain.base != ChainBase::Dvr || chain.depth < 6 {
        return Err(Error::InvalidArgument(
            "needs a DVR chain of depth >= 6".into(),
        ));
    }
    let mut out = Vec::new();
    for m in 1..=5 {
        for shift in 0..=4 {
            for fix in [false, true] {
                out.push(FractionalCandidate::dvr_bounded(chain, m, shift, fix));
            }
        }
    }
    Ok(out)
}

/// Bounded candidates on an element chain: for each `n ∈ 1..depth` and each
/// listed ideal `I` with `s^n R ⊆ I` and `s^(n-1) R ⊄ I`, the map
/// [`FractionalCandidate::element_bounded`].
pub fn element_chain_candidates(
    chain: &FractionalChain,
    ideals: &[Ideal],
) -> Vec<FractionalCandidate> {
    let mut out = Vec::new();
    for n in 1..chain.depth as i64 {
        let (inner, outer) = (chain.member(n), chain.member(n - 1));
        for ideal in ideals.iter().filter(|i| i.is_proper()) {
            let f = FractionalIdeal::from_ideal(ideal);
            if f.contains(&inner) && !f.contains(&outer) {
                out.push(FractionalCandidate::element_bounded(chain, n, ideal));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WitnessKind {
    /// `f(R) ⊋ R`, refuted at `(R, R)`.
    EnlargesRing,
    /// Constant on a tail, refuted by a tail index times a negative index.
    BoundedTail,
    /// Any other failing product instance.
    Other,
}

/// A failing product instance `f(C_i) f(C_j) ⊄ f(C_(i+j))`.
#[derive(Debug, Clone, Serialize)]
pub struct FractionalWitness {
    pub kind: WitnessKind,
    pub i: i64,
    pub j: i64,
    pub product: FractionalIdeal,
    pub target: FractionalIdeal,
}

impl FractionalWitness {
    /// Recomputes both sides and confirms the product escapes the target.
    pub fn replay(&self, candidate: &FractionalCandidate) -> bool {
        match product_failure(candidate, self.i, self.j) {
            Some((p, t)) => p == self.product && t == self.target,
            None => false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FractionalVerdict {
    Witness(FractionalWitness),
    /// The candidate is the identity and the exhaustive chain search admits
    /// nothing else.
    CertifiedIdentityOnly,
    /// No failing instance inside the window, yet not certified.
    Unrefuted,
}

fn product_failure(
    c: &FractionalCandidate,
    i: i64,
    j: i64,
) -> Option<(FractionalIdeal, FractionalIdeal)> {
    let (fi, fj, fij) = (c.value(i)?, c.value(j)?, c.value(i + j)?);
    let p = fi.product(fj);
    (!fij.contains(&p)).then(|| (p, fij.clone()))
}

/// Looks for a product-axiom failure, following the refutation pattern that
/// fits the candidate: `(R, R)` if `f(R) ⊋ R`, then a tail index against a
/// negative index if the candidate is constant on a tail, then every pair.
pub fn fractional_violation(
    chain: &FractionalChain,
    candidate: &FractionalCandidate,
    margin: u32,
) -> Result<FractionalVerdict> {
    if let Some(i) = chain.indices().find(|i| candidate.value(*i).is_none()) {
        return Err(Error::DomainGap(format!(
            "{} undefined at index {i}",
            candidate.name
        )));
    }
    let d = chain.depth as i64;
    let witness = |kind, i, j| {
        product_failure(candidate, i, j).map(|(product, target)| FractionalWitness {
            kind,
            i,
            j,
            product,
            target,
        })
    };
    let r = chain.member(0);
    let f_r = candidate.value(0).unwrap();
    if f_r.contains(&r) && *f_r != r {
        if let Some(w) = witness(WitnessKind::EnlargesRing, 0, 0) {
            return Ok(FractionalVerdict::Witness(w));
        }
    }
    let top = candidate.value(d).unwrap();
    let tail_start = (-d..=d)
        .rev()
        .take_while(|&i| candidate.value(i).unwrap() == top)
        .last()
        .unwrap();
    if tail_start < d {
        for i in tail_start + 1..=d {
            for j in (-d..0).rev() {
                if i + j < tail_start {
                    break;
                }
                if let Some(w) = witness(WitnessKind::BoundedTail, i, j) {
                    return Ok(FractionalVerdict::Witness(w));
                }
            }
        }
    }
    for i in -d..=d {
        for j in -d..=d {
            if chain.in_range(i + j) {
                if let Some(w) = witness(WitnessKind::Other, i, j) {
                    return Ok(FractionalVerdict::Witness(w));
                }
            }
        }
    }
    if candidate.is_identity_on(chain) && certify_identity_only(chain.depth, margin)? {
        return Ok(FractionalVerdict::CertifiedIdentityOnly);
    }
    Ok(FractionalVerdict::Unrefuted)
}

/// Largest chain half-width the exhaustive search accepts.
const MAX_CHAIN_SEARCH: u32 = 10;

/// All semiprime operations on a chain window `[-depth, depth]` with values
/// in the chain, kept only if they extend to `[-(depth+margin), depth+margin]`,
/// reported as their restriction (`f(C_i) = C_(map[i + depth])`).
///
/// A closure operation on a finite chain is determined by its closed members,
/// which must include the top `C_-E`; `f(C_i)` is the closed member with the
/// largest index `<= i`. Products are checked on every in-window pair.
pub fn chain_semiprime_operations(depth: u32, margin: u32) -> Result<Vec<Vec<i64>>> {
    let e = depth + margin;
    if e > MAX_CHAIN_SEARCH {
        return Err(Error::InvalidArgument(format!(
            "chain search limited to depth + margin <= {MAX_CHAIN_SEARCH}"
        )));
    }
    let e = e as i64;
    let width = (2 * e + 1) as usize;
    let d = depth as i64;
    let mut out = std::collections::BTreeSet::new();
    // Bit k of `closed` marks index k - e + 1 for k < width - 1; the top is
    // always closed.
    for closed in 0u64..(1u64 << (width - 1)) {
        let mut f = vec![0i64; width];
        let mut last = -e;
        f[0] = -e;
        for k in 1..width {
            let idx = k as i64 - e;
            if closed >> (k - 1) & 1 == 1 {
                last = idx;
            }
            f[k] = last;
        }
        let at = |i: i64| f[(i + e) as usize];
        let ok = (-e..=e).all(|i| {
            (-e..=e).all(|j| {
                let s = i + j;
                s.abs() > e || at(i) + at(j) >= at(s)
            })
        });
        if ok {
            out.insert((-d..=d).map(at).collect::<Vec<_>>());
        }
    }
    Ok(out.into_iter().collect())
}

/// True iff the only chain semiprime operation (up to restriction) is the
/// identity.
pub fn certify_identity_only(depth: u32, margin: u32) -> Result<bool> {
    let ops = chain_semiprime_operations(depth, margin)?;
    let d = depth as i64;
    let identity: Vec<i64> = (-d..=d).collect();
    Ok(ops == vec![identity])
}
