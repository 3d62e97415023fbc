//! Truncated power series over a prime field.
//!
//! A [`TruncatedSeries`] is an element of `K[[t]]` known modulo `t^bound`.
//! Arithmetic tracks the exponent up to which each result is trustworthy, so
//! truncation loss is always explicit.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::semigroup::NumericalSemigroup;

/// Cap on result bounds produced by [`TruncatedSeries::mul`].
pub const DEFAULT_MAX_BOUND: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    field: PrimeField,
    coeffs: Vec<u8>,
    ring_constrained: bool,
}

impl TruncatedSeries {
    /// Series with the given coefficients; `bound = coeffs.len()`.
    pub fn from_coeffs(field: PrimeField, coeffs: impl IntoIterator<Item = i64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| field.reduce(c)).collect();
        Self {
            field,
            coeffs,
            ring_constrained: false,
        }
    }

    /// Polynomial `Σ c·t^e` known modulo `t^bound`. Terms at or beyond the
    /// bound are rejected.
    pub fn from_terms(field: PrimeField, terms: &[(usize, i64)], bound: usize) -> Result<Self> {
        let mut coeffs = vec![0u8; bound];
        for &(e, c) in terms {
            if e >= bound {
                return Err(Error::InsufficientPrecision {
                    bound,
                    needed: e + 1,
                });
            }
            coeffs[e] = field.add(coeffs[e], field.reduce(c));
        }
        Ok(Self {
            field,
            coeffs,
            ring_constrained: false,
        })
    }

    pub fn zero(field: PrimeField, bound: usize) -> Self {
        Self {
            field,
            coeffs: vec![0; bound],
            ring_constrained: true,
        }
    }

    pub fn one(field: PrimeField, bound: usize) -> Self {
        Self::monomial(field, 0, bound)
    }

    pub fn monomial(field: PrimeField, e: usize, bound: usize) -> Self {
        let mut coeffs = vec![0; bound];
        if e < bound {
            coeffs[e] = 1;
        }
        Self {
            field,
            coeffs,
            ring_constrained: false,
        }
    }

    /// Marks the series as an element of `K[[t^S]]`, checking its support.
    pub fn constrain_to(mut self, s: &NumericalSemigroup) -> Result<Self> {
        if let Some(e) = self.support().find(|&e| !s.contains(e as u64)) {
            return Err(Error::InvalidArgument(format!(
                "coefficient at t^{e} lies outside the semigroup"
            )));
        }
        self.ring_constrained = true;
        Ok(self)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn is_ring_constrained(&self) -> bool {
        self.ring_constrained
    }

    /// Coefficient of `t^e`; `None` when `e` is at or beyond the bound.
    pub fn coeff(&self, e: usize) -> Option<u8> {
        self.coeffs.get(e).copied()
    }

    /// Least exponent with a nonzero coefficient, or `None` if every known
    /// coefficient vanishes.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.order().is_none()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, _)| e)
    }

    /// Effective order used in bound tracking: a vanishing series is `O(t^bound)`.
    fn effective_order(&self) -> usize {
        self.order().unwrap_or(self.bound())
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.p() as u32,
                other.field.p() as u32,
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let bound = self.bound().min(other.bound());
        let f = self.field;
        let coeffs = (0..bound)
            .map(|e| f.add(self.coeffs[e], other.coeffs[e]))
            .collect();
        Ok(Self {
            field: f,
            coeffs,
            ring_constrained: self.ring_constrained && other.ring_constrained,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn scale(&self, c: u8) -> Self {
        let f = self.field;
        Self {
            field: f,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
            ring_constrained: self.ring_constrained,
        }
    }

    /// Multiplication by `t^k`; the bound grows by `k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self {
            field: self.field,
            coeffs,
            ring_constrained: false,
        }
    }

    /// Truncates to a smaller bound (no-op if `bound` is not smaller).
    pub fn truncate(&self, bound: usize) -> Self {
        let mut out = self.clone();
        out.coeffs.truncate(bound);
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_capped(other, DEFAULT_MAX_BOUND)
    }

    /// Product known modulo `t^b` with
    /// `b = min(bound_f + order_g, bound_g + order_f, cap)`.
    pub fn mul_capped(&self, other: &Self, cap: usize) -> Result<Self> {
        self.check_field(other)?;
        let bound = (self.bound() + other.effective_order())
            .min(other.bound() + self.effective_order())
            .min(cap);
        let f = self.field;
        let mut acc = vec![0u32; bound];
        let p = f.p() as u32;
        for (i, &a) in self.coeffs.iter().enumerate().take(bound) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(bound - i) {
                if b != 0 {
                    acc[i + j] = (acc[i + j] + a as u32 * b as u32) % p;
                }
            }
        }
        Ok(Self {
            field: f,
            coeffs: acc.into_iter().map(|c| c as u8).collect(),
            ring_constrained: self.ring_constrained && other.ring_constrained,
        })
    }

    /// Inverse of a unit of `K[[t]]` to the same bound.
    ///
    /// The result is never marked ring-constrained: inverses live in the
    /// normalization and callers re-check support when they need a ring unit.
    pub fn invert_unit(&self) -> Result<Self> {
        let u0 = match self.coeffs.first() {
            Some(&c) if c != 0 => c,
            _ => return Err(Error::NotAUnit(self.order())),
        };
        let f = self.field;
        let inv0 = f.inv(u0);
        let n = self.bound();
        let mut v = vec![0u8; n];
        v[0] = inv0;
        for k in 1..n {
            let mut s = 0u8;
            for i in 1..=k {
                s = f.add(s, f.mul(self.coeffs[i], v[k - i]));
            }
            v[k] = f.mul(f.neg(s), inv0);
        }
        Ok(Self {
            field: f,
            coeffs: v,
            ring_constrained: false,
        })
    }

    /// Parses `c t^e` terms joined by `+`/`-`, e.g. `t^2 + 3t^5`. Coefficients
    /// are reduced mod p and exponents may come in any order. The bound is the
    /// larger of `min_bound` and one past the largest exponent.
    pub fn parse(text: &str, field: PrimeField, min_bound: usize) -> Result<Self> {
        let terms = parse_terms(text)?;
        let top = terms.iter().map(|&(e, _)| e + 1).max().unwrap_or(0);
        Self::from_terms(field, &terms, top.max(min_bound))
    }
}

/// Parses a sum of monomials into `(exponent, coefficient)` pairs.
pub fn parse_terms(text: &str) -> Result<Vec<(usize, i64)>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut terms = Vec::new();
    let mut rest = compact.as_str();
    let mut sign = 1i64;
    if let Some(r) = rest.strip_prefix('-') {
        sign = -1;
        rest = r;
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r;
    }
    loop {
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        let (e, c) = parse_term(term)?;
        terms.push((e, sign * c));
        if tail.is_empty() {
            break;
        }
        sign = if tail.starts_with('-') { -1 } else { 1 };
        rest = &tail[1..];
    }
    Ok(terms)
}

fn parse_term(term: &str) -> Result<(usize, i64)> {
    let bad = || Error::Parse(format!("bad term {term:?}"));
    if term.is_empty() {
        return Err(bad());
    }
    match term.find('t') {
        None => Ok((0, term.parse().map_err(|_| bad())?)),
        Some(pos) => {
            let coeff = term[..pos].trim_end_matches('*');
            let c = if coeff.is_empty() {
                1
            } else {
                coeff.parse().map_err(|_| bad())?
            };
            let after = &term[pos + 1..];
            let e = if after.is_empty() {
                1
            } else {
                after
                    .strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse()
                    .map_err(|_| bad())?
            };
            Ok((e, c))
        }
    }
}

/// Formats `Σ c·t^e` in ascending exponent order.
pub(crate) fn format_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, u8)>,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        if c == 0 {
            continue;
        }
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        match (e, c) {
            (0, c) => write!(f, "{c}")?,
            (e, 1) => write!(f, "t^{e}")?,
            (e, c) => write!(f, "{c}t^{e}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(
            f,
            self.coeffs.iter().enumerate().map(|(e, &c)| (e as i64, c)),
        )?;
        if f.alternate() {
            write!(f, " + O(t^{})", self.bound())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn series(p: u32, text: &str, bound: usize) -> TruncatedSeries {
        TruncatedSeries::parse(text, fp(p), bound).unwrap()
    }

    #[test]
    fn monomial_shift_product() {
        let f = series(2, "t^2+t^5", 12);
        let g = series(2, "t^2", 12);
        let h = f.mul(&g).unwrap();
        assert_eq!(h.order(), Some(4));
        assert_eq!(h.support().collect::<Vec<_>>(), vec![4, 7]);
    }

    #[test]
    fn char_two_square() {
        let f = series(2, "1+t^2", 8);
        let h = f.mul(&f).unwrap();
        assert_eq!(h.support().collect::<Vec<_>>(), vec![0, 4]);
        assert_eq!(h.bound(), 8);
    }

    #[test]
    fn shift_by_t_squared() {
        let f = series(5, "t^4+t^5", 10);
        let h = series(5, "t^2", 10).mul(&f).unwrap();
        assert_eq!(h.support().collect::<Vec<_>>(), vec![6, 7]);
    }

    #[test]
    fn product_bound_is_tracked() {
        let f = TruncatedSeries::from_terms(fp(3), &[(2, 1)], 6).unwrap();
        let g = TruncatedSeries::from_terms(fp(3), &[(3, 1)], 10).unwrap();
        // f is known mod t^6 and g has order 3, so f*g is known mod t^9.
        assert_eq!(f.mul(&g).unwrap().bound(), 9);
    }

    #[test]
    fn field_mismatch() {
        let f = series(2, "t", 3);
        let g = series(3, "t", 3);
        assert_eq!(f.mul(&g).unwrap_err(), Error::FieldMismatch(2, 3));
    }

    #[test]
    fn inverses() {
        assert_eq!(series(7, "1", 5).invert_unit().unwrap(), series(7, "1", 5));
        let inv = series(2, "1+t", 4).invert_unit().unwrap();
        assert_eq!(inv, series(2, "1+t+t^2+t^3", 4));
        let inv = series(3, "1+t^2", 5).invert_unit().unwrap();
        assert_eq!(inv, series(3, "1+2t^2+t^4", 5));
        assert!(matches!(
            series(3, "t", 5).invert_unit(),
            Err(Error::NotAUnit(Some(1)))
        ));
        assert!(matches!(
            TruncatedSeries::zero(fp(3), 4).invert_unit(),
            Err(Error::NotAUnit(None))
        ));
    }

    #[test]
    fn parse_and_print() {
        let f = series(5, "3t^5 + t^2 - t^2 + t^2 + 7", 0);
        assert_eq!(f.to_string(), "2 + t^2 + 3t^5");
        assert_eq!(format!("{f:#}"), "2 + t^2 + 3t^5 + O(t^6)");
        assert!(TruncatedSeries::parse("t^", fp(5), 0).is_err());
        assert!(TruncatedSeries::parse("", fp(5), 0).is_err());
        assert_eq!(series(3, "-t", 0).to_string(), "2t^1");
    }

    #[test]
    fn constrained_products_stay_in_ring() {
        let s = NumericalSemigroup::from_generators(&[3, 4, 5]).unwrap();
        let f = series(3, "t^3+2t^4", 12).constrain_to(&s).unwrap();
        let g = series(3, "1+t^5", 12).constrain_to(&s).unwrap();
        let h = f.mul(&g).unwrap();
        assert!(h.is_ring_constrained());
        assert!(h.support().all(|e| s.contains(e as u64)));
        assert!(series(3, "t+t^3", 6).constrain_to(&s).is_err());
    }

    fn arb_series(p: u32, bound: usize) -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec(0i64..p as i64, bound)
            .prop_map(move |c| TruncatedSeries::from_coeffs(fp(p), c))
    }

    fn common_prefix_eq(a: &TruncatedSeries, b: &TruncatedSeries) -> bool {
        let n = a.bound().min(b.bound());
        a.coeffs()[..n] == b.coeffs()[..n]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn mul_commutative_associative(p in prop::sample::select(vec![2u32, 3, 5]),
                                       seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let rand_series = |rng: &mut rand_chacha::ChaCha8Rng| {
                let n = rng.gen_range(1..12);
                TruncatedSeries::from_coeffs(fp(p), (0..n).map(|_| rng.gen_range(0..p as i64)))
            };
            let (a, b, c) = (rand_series(&mut rng), rand_series(&mut rng), rand_series(&mut rng));
            prop_assert!(common_prefix_eq(&a.mul(&b).unwrap(), &b.mul(&a).unwrap()));
            let l = a.mul(&b).unwrap().mul(&c).unwrap();
            let r = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert!(common_prefix_eq(&l, &r));
        }

        #[test]
        fn unit_inverse(u in arb_series(5, 9), lead in 1i64..5) {
            let mut c = u.coeffs().iter().map(|&x| x as i64).collect::<Vec<_>>();
            c[0] = lead;
            let u = TruncatedSeries::from_coeffs(fp(5), c);
            let prod = u.mul(&u.invert_unit().unwrap()).unwrap();
            prop_assert_eq!(prod, TruncatedSeries::one(fp(5), 9));
        }
    }
}
