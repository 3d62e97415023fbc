//! Ideals of `R = K[[t^S]]` in canonical window form.
//!
//! A proper ideal `I` of order `n` contains `t^(n+c) K[[t]]` (`c` the
//! conductor), so it is determined by the reduced row echelon basis of
//! `I mod t^(n+c)` on exponents `[n, n+c)`. That basis is the canonical form:
//! two ideals are equal iff their windows are bitwise equal.

mod enumerate;
mod hasse;
mod shape;
pub(crate) mod window;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

pub use enumerate::{
    enumerate_ideals, enumerate_ideals_with_budget, enumeration_cost, DEFAULT_ENUMERATION_BUDGET,
};
pub use hasse::{covering_edges, hasse_diagram, node_name};
pub use shape::{canonical_principal_form, classify_shape, ShapeFamily, ShapeTag};
pub use window::Window;

use crate::error::{Error, Result};
use crate::linalg::Rref;
use crate::ring::Ring;
use crate::series::TruncatedSeries;
use window::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IdealKind {
    Unit,
    Proper,
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Body {
    Unit,
    Proper(Window),
    Zero,
}

/// Canonical form of an ideal of a semigroup ring.
///
/// Equality, hashing and ordering look only at the canonical body; mixing
/// ideals of different rings in one collection is a logic error that the
/// binary operations report as [`Error::RingMismatch`].
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    body: Body,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.body == other.body
    }
}

impl Eq for Ideal {}

impl Hash for Ideal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.body.hash(state);
    }
}

impl Ord for Ideal {
    /// Unit first, then proper ideals by order and window bytes, zero last.
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.body, &other.body) {
            (Body::Proper(a), Body::Proper(b)) => a.cmp(b),
            _ => self.kind().cmp(&other.kind()),
        }
    }
}

impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ideal {
    pub fn unit(ring: &Arc<Ring>) -> Self {
        Self {
            ring: ring.clone(),
            body: Body::Unit,
        }
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self {
            ring: ring.clone(),
            body: Body::Zero,
        }
    }

    /// The maximal ideal `(t^g : g a generator of S)`.
    pub fn maximal(ring: &Arc<Ring>) -> Self {
        Self::order_filter(ring, ring.semigroup().multiplicity() as i64)
    }

    /// `{f ∈ R : ord f >= n}`.
    pub fn order_filter(ring: &Arc<Ring>, n: i64) -> Self {
        let n = (n.max(0)..).find(|&e| ring.in_s(e)).unwrap();
        Self::from_window(ring, Window::filtered(ring, n, |e| ring.in_s(e)))
    }

    pub(crate) fn from_window(ring: &Arc<Ring>, w: Window) -> Self {
        debug_assert!(w.order >= 0);
        let body = if w.order == 0 {
            Body::Unit
        } else {
            Body::Proper(w)
        };
        Self {
            ring: ring.clone(),
            body,
        }
    }

    /// Builds a proper ideal directly from window rows (in RREF or not).
    /// Rows must be support-masked and closed under the generator shifts.
    pub fn from_window_rows(ring: &Arc<Ring>, order: i64, rows: Vec<Vec<u8>>) -> Result<Self> {
        let w = ring.width();
        if rows.iter().any(|r| r.len() != w) {
            return Err(Error::InvalidArgument(format!(
                "window rows must have length {w}"
            )));
        }
        let basis = Rref::from_rows(ring.field(), w, rows);
        let polys: Vec<Poly> = basis
            .rows()
            .iter()
            .map(|r| Poly {
                lo: order,
                coeffs: r.clone(),
            })
            .collect();
        if polys.iter().any(|p| {
            p.coeffs
                .iter()
                .enumerate()
                .any(|(j, &c)| c != 0 && !ring.in_s(order + j as i64))
        }) {
            return Err(Error::InvalidArgument(
                "window row leaves the semigroup support".into(),
            ));
        }
        match window::generate(ring, &polys) {
            None => Ok(Self::zero(ring)),
            Some(win) if win.order == order && win.basis == basis => {
                Ok(Self::from_window(ring, win))
            }
            Some(_) => Err(Error::InvalidArgument(
                "window rows do not form a canonical ideal window".into(),
            )),
        }
    }

    /// The ideal generated by ring elements.
    ///
    /// Every generator must be known modulo `t^(n+c)`, where `n` is the least
    /// order among the generators and `c` the conductor; otherwise the window
    /// cannot be determined and [`Error::InsufficientPrecision`] is returned.
    pub fn from_generators(ring: &Arc<Ring>, gens: &[TruncatedSeries]) -> Result<Self> {
        for g in gens {
            if g.field() != ring.field() {
                return Err(Error::FieldMismatch(
                    ring.field().p() as u32,
                    g.field().p() as u32,
                ));
            }
            if let Some(e) = g.support().find(|&e| !ring.in_s(e as i64)) {
                return Err(Error::InvalidArgument(format!(
                    "generator {g} has a term t^{e} outside the ring"
                )));
            }
        }
        let Some(n) = gens.iter().filter_map(|g| g.order()).min() else {
            return Ok(Self::zero(ring));
        };
        if n == 0 {
            return Ok(Self::unit(ring));
        }
        let needed = n + ring.width();
        if let Some(g) = gens.iter().find(|g| g.bound() < needed) {
            return Err(Error::InsufficientPrecision {
                bound: g.bound(),
                needed,
            });
        }
        let polys: Vec<Poly> = gens
            .iter()
            .map(|g| Poly {
                lo: 0,
                coeffs: g.coeffs()[..needed].to_vec(),
            })
            .collect();
        let w = window::generate(ring, &polys).expect("some generator is nonzero");
        Ok(Self::from_window(ring, w))
    }

    /// The principal ideal `(f)`.
    pub fn principal(ring: &Arc<Ring>, f: &TruncatedSeries) -> Result<Self> {
        Self::from_generators(ring, std::slice::from_ref(f))
    }

    /// Parses a comma-separated generator list such as `t^4+t^5, t^7`.
    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        let parts: Vec<&str> = text
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .collect();
        let parsed: Vec<Vec<(usize, i64)>> = parts
            .iter()
            .map(|s| crate::series::parse_terms(s))
            .collect::<Result<_>>()?;
        let top = parsed
            .iter()
            .flat_map(|t| t.iter().map(|&(e, _)| e + 1))
            .max()
            .unwrap_or(0);
        let bound = top + ring.width();
        for terms in parsed {
            gens.push(TruncatedSeries::from_terms(ring.field(), &terms, bound)?);
        }
        Self::from_generators(ring, &gens)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn kind(&self) -> IdealKind {
        match self.body {
            Body::Unit => IdealKind::Unit,
            Body::Proper(_) => IdealKind::Proper,
            Body::Zero => IdealKind::Zero,
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.body, Body::Unit)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.body, Body::Zero)
    }

    pub fn is_proper(&self) -> bool {
        matches!(self.body, Body::Proper(_))
    }

    /// Least order of a nonzero element; 0 for the unit ideal, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        match &self.body {
            Body::Unit => Some(0),
            Body::Proper(w) => Some(w.order as u32),
            Body::Zero => None,
        }
    }

    /// The canonical window, with the unit ideal expanded to order 0.
    pub fn window(&self) -> Option<Window> {
        match &self.body {
            Body::Unit => Some(Window::filtered(&self.ring, 0, |e| self.ring.in_s(e))),
            Body::Proper(w) => Some(w.clone()),
            Body::Zero => None,
        }
    }

    /// Window rows as coefficient vectors on `[order, order + width)`.
    pub fn window_rows(&self) -> Vec<Vec<u8>> {
        match &self.body {
            Body::Proper(w) => w.basis.rows().to_vec(),
            _ => Vec::new(),
        }
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(match (&self.body, &other.body) {
            (Body::Zero, _) | (_, Body::Zero) => Self::zero(&self.ring),
            (Body::Unit, _) => other.clone(),
            (_, Body::Unit) => self.clone(),
            (Body::Proper(a), Body::Proper(b)) => {
                Self::from_window(&self.ring, window::product(&self.ring, a, b))
            }
        })
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(match (&self.body, &other.body) {
            (Body::Zero, _) => other.clone(),
            (_, Body::Zero) => self.clone(),
            (Body::Unit, _) | (_, Body::Unit) => Self::unit(&self.ring),
            (Body::Proper(a), Body::Proper(b)) => {
                Self::from_window(&self.ring, window::sum(&self.ring, a, b))
            }
        })
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(match (&self.body, &other.body) {
            (Body::Zero, _) | (_, Body::Zero) => Self::zero(&self.ring),
            (Body::Unit, _) => other.clone(),
            (_, Body::Unit) => self.clone(),
            (Body::Proper(a), Body::Proper(b)) => {
                Self::from_window(&self.ring, window::intersect(&self.ring, a, b))
            }
        })
    }

    /// `other ⊆ self`
    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.same_ring(other)?;
        Ok(match (&self.body, &other.body) {
            (_, Body::Zero) | (Body::Unit, _) => true,
            (Body::Zero, _) | (_, Body::Unit) => false,
            (Body::Proper(a), Body::Proper(b)) => window::contains(&self.ring, a, b),
        })
    }

    /// Multiplication by the monomial `t^k`, `k ∈ S`.
    pub fn shift(&self, k: u32) -> Result<Self> {
        if !self.ring.in_s(k as i64) {
            return Err(Error::InvalidArgument(format!("t^{k} is not in the ring")));
        }
        Ok(match &self.body {
            Body::Zero => self.clone(),
            Body::Unit => {
                Self::order_filter(&self.ring, 0).product(&Self::monomial(&self.ring, k))?
            }
            Body::Proper(w) => Self::from_window(&self.ring, window::shift(w, k as i64)),
        })
    }

    /// The principal ideal `(t^k)`, `k ∈ S`.
    pub fn monomial(ring: &Arc<Ring>, k: u32) -> Self {
        let poly = Poly {
            lo: k as i64,
            coeffs: vec![1],
        };
        Self::from_window(ring, window::generate(ring, &[poly]).unwrap())
    }

    /// `dim_K I/mI`, the minimal number of generators.
    pub fn min_generators(&self) -> Result<usize> {
        let Body::Proper(w) = &self.body else {
            return Err(Error::NotProper);
        };
        Ok(w.basis.dim() - window::maximal_times(&self.ring, w).dim())
    }

    /// A canonical minimal generating set: window rows reduced modulo `mI`,
    /// in reduced row echelon form. Each generator is a polynomial known
    /// modulo `t^(order + width)`.
    pub fn reduced_generators(&self) -> Vec<TruncatedSeries> {
        let f = self.ring.field();
        match &self.body {
            Body::Zero => Vec::new(),
            Body::Unit => vec![TruncatedSeries::one(f, 1)],
            Body::Proper(w) => {
                let order = w.order as usize;
                let bound = order + self.ring.width();
                reduced_rows(&self.ring, w)
                    .into_iter()
                    .map(|r| {
                        let mut c = vec![0i64; order];
                        c.extend(r.iter().map(|&x| x as i64));
                        debug_assert_eq!(c.len(), bound);
                        TruncatedSeries::from_coeffs(f, c)
                    })
                    .collect()
            }
        }
    }

    /// `{f ∈ R : ord f >= ord I}`, the integral closure in these rings.
    pub fn integral_closure(&self) -> Result<Self> {
        match &self.body {
            Body::Proper(w) => Ok(Self::order_filter(&self.ring, w.order)),
            _ => Err(Error::NotProper),
        }
    }

    pub fn is_principal(&self) -> bool {
        match &self.body {
            Body::Proper(_) => self.min_generators().unwrap() == 1,
            Body::Unit => true,
            Body::Zero => false,
        }
    }

    pub fn record(&self) -> IdealRecord {
        IdealRecord {
            kind: self.kind(),
            order: self.order(),
            generators: self.to_string(),
            shape: classify_shape(self).ok().map(|s| s.to_string()),
            window: self.window_rows(),
        }
    }
}

/// Window rows modulo `mI`, re-reduced: a canonical complement of `mI` in `I`.
pub(crate) fn reduced_rows(ring: &Ring, w: &Window) -> Vec<Vec<u8>> {
    let f = ring.field();
    let m = window::maximal_times(ring, w);
    let reduced = w.basis.rows().iter().map(|r| {
        let mut v = r.clone();
        m.reduce(f, &mut v);
        v
    });
    let mut gens = Rref::from_rows(f, ring.width(), reduced);
    // Re-reduce against mI after the echelon step mixes rows.
    let rows: Vec<Vec<u8>> = gens
        .rows()
        .iter()
        .map(|r| {
            let mut v = r.clone();
            m.reduce(f, &mut v);
            v
        })
        .collect();
    gens = Rref::from_rows(f, ring.width(), rows);
    gens.into_rows()
}

/// JSON form of an ideal.
#[derive(Debug, Clone, Serialize)]
pub struct IdealRecord {
    pub kind: IdealKind,
    pub order: Option<u32>,
    pub generators: String,
    pub shape: Option<String>,
    pub window: Vec<Vec<u8>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.body {
            Body::Unit => f.write_str("R"),
            Body::Zero => f.write_str("(0)"),
            Body::Proper(w) => {
                f.write_str("(")?;
                for (i, r) in reduced_rows(&self.ring, w).iter().enumerate() {
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
    }
}
