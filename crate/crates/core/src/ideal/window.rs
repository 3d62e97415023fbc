//! Window arithmetic shared by ideals and fractional ideals.
//!
//! A [`Window`] of order `n` is the `R`-submodule of `K((t))` spanned by its
//! rows (coefficient vectors on exponents `[n, n + w)`) together with the
//! automatic tail `t^(n+w) K[[t]]`, where `w` is the ring's window width.

use std::cmp::Ordering;

use crate::linalg::Rref;
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Window {
    pub(crate) order: i64,
    pub(crate) basis: Rref,
}

impl Ord for Window {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.basis.rows().cmp(other.basis.rows()))
    }
}

impl PartialOrd for Window {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A Laurent polynomial `t^lo · Σ c_j t^j`, exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Poly {
    pub lo: i64,
    pub coeffs: Vec<u8>,
}

impl Poly {
    pub fn order(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|&c| c != 0)
            .map(|j| self.lo + j as i64)
    }

    /// Coefficient vector on `[from, to)`.
    pub fn slice(&self, from: i64, to: i64) -> Vec<u8> {
        (from..to)
            .map(|e| {
                let j = e - self.lo;
                if j >= 0 && (j as usize) < self.coeffs.len() {
                    self.coeffs[j as usize]
                } else {
                    0
                }
            })
            .collect()
    }

    pub fn mul(&self, other: &Poly, ring: &Ring) -> Poly {
        let f = ring.field();
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly {
                lo: self.lo + other.lo,
                coeffs: Vec::new(),
            };
        }
        let mut out = vec![0u8; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Poly {
            lo: self.lo + other.lo,
            coeffs: out,
        }
    }
}

impl Window {
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn basis(&self) -> &Rref {
        &self.basis
    }

    pub(crate) fn rows_as_polys(&self) -> impl Iterator<Item = Poly> + '_ {
        self.basis.rows().iter().map(move |r| Poly {
            lo: self.order,
            coeffs: r.clone(),
        })
    }

    /// All coordinates at exponents `>= order` allowed by `support`.
    pub fn filtered(ring: &Ring, order: i64, support: impl Fn(i64) -> bool) -> Window {
        let w = ring.width();
        let rows = (0..w)
            .filter(|&j| support(order + j as i64))
            .map(|j| unit(w, j));
        Window {
            order,
            basis: Rref::from_rows(ring.field(), w, rows),
        }
    }
}

pub(crate) fn unit(n: usize, j: usize) -> Vec<u8> {
    let mut v = vec![0; n];
    v[j] = 1;
    v
}

/// Canonical window of `span(basis) + t^hi K[[t]]`, where `basis` lives on
/// exponents `[lo, hi)`. The input must already be an `R`-module.
pub(crate) fn canonicalize(ring: &Ring, lo: i64, hi: i64, basis: &Rref) -> Window {
    let w = ring.width();
    let f = ring.field();
    let order = match basis.pivots().first() {
        Some(&p) => lo + p as i64,
        None => hi,
    };
    let end = order + w as i64;
    let mut rows: Vec<Vec<u8>> = Vec::with_capacity(w);
    for r in basis.rows() {
        let v: Vec<u8> = (order..end)
            .map(|e| if e < hi { r[(e - lo) as usize] } else { 0 })
            .collect();
        rows.push(v);
    }
    for e in hi.max(order)..end {
        rows.push(unit(w, (e - order) as usize));
    }
    Window {
        order,
        basis: Rref::from_rows(f, w, rows),
    }
}

/// The `R`-module generated by exact Laurent polynomials. Returns `None`
/// when every polynomial vanishes.
pub(crate) fn generate(ring: &Ring, polys: &[Poly]) -> Option<Window> {
    let lo = polys.iter().filter_map(Poly::order).min()?;
    let w = ring.width();
    let hi = lo + w as i64;
    let f = ring.field();
    let mut basis = Rref::zero(w);
    for g in polys {
        let Some(og) = g.order() else { continue };
        for s in 0..(hi - og) {
            if !ring.in_s(s) {
                continue;
            }
            // t^s * g restricted to [lo, hi)
            let shifted = Poly {
                lo: g.lo + s,
                coeffs: g.coeffs.clone(),
            };
            basis.insert(f, shifted.slice(lo, hi));
        }
    }
    Some(canonicalize(ring, lo, hi, &basis))
}

pub(crate) fn product(ring: &Ring, a: &Window, b: &Window) -> Window {
    let polys: Vec<Poly> = a
        .rows_as_polys()
        .flat_map(|x| b.rows_as_polys().map(move |y| (x.clone(), y)))
        .map(|(x, y)| x.mul(&y, ring))
        .collect();
    generate(ring, &polys).expect("product of nonzero modules is nonzero")
}

/// `b ⊆ a`
pub(crate) fn contains(ring: &Ring, a: &Window, b: &Window) -> bool {
    if b.order < a.order {
        return false;
    }
    let w = ring.width() as i64;
    let f = ring.field();
    b.rows_as_polys()
        .all(|r| a.basis.contains(f, &r.slice(a.order, a.order + w)))
}

pub(crate) fn sum(ring: &Ring, a: &Window, b: &Window) -> Window {
    let lo = a.order.min(b.order);
    let hi = lo + ring.width() as i64;
    let rows = a
        .rows_as_polys()
        .chain(b.rows_as_polys())
        .map(|p| p.slice(lo, hi));
    let basis = Rref::from_rows(ring.field(), ring.width(), rows);
    canonicalize(ring, lo, hi, &basis)
}

/// `(x ∩ t^m K[[t]]) mod t^(m+w)` as a subspace on `[m, m + w)`.
fn restrict_above(ring: &Ring, x: &Window, m: i64) -> Rref {
    let w = ring.width();
    let hi = m + w as i64;
    let ncols = (hi - x.order) as usize;
    let f = ring.field();
    let rows = x
        .rows_as_polys()
        .map(|p| p.slice(x.order, hi))
        .chain((x.order + w as i64..hi).map(|e| unit(ncols, (e - x.order) as usize)));
    let full = Rref::from_rows(f, ncols, rows);
    let skip = (m - x.order) as usize;
    Rref::from_rows(
        f,
        w,
        full.rows()
            .iter()
            .zip(full.pivots())
            .filter(|(_, &p)| p >= skip)
            .map(|(r, _)| r[skip..].to_vec()),
    )
}

pub(crate) fn intersect(ring: &Ring, a: &Window, b: &Window) -> Window {
    let m = a.order.max(b.order);
    let hi = m + ring.width() as i64;
    let f = ring.field();
    let common = restrict_above(ring, a, m).intersect(f, &restrict_above(ring, b, m));
    canonicalize(ring, m, hi, &common)
}

/// Multiplication by `t^k`.
pub(crate) fn shift(a: &Window, k: i64) -> Window {
    Window {
        order: a.order + k,
        basis: a.basis.clone(),
    }
}

/// The part of `m·x` inside `x`'s window, where `m` is the maximal ideal.
pub(crate) fn maximal_times(ring: &Ring, x: &Window) -> Rref {
    let w = ring.width();
    let gens = ring.semigroup().generators();
    let polys: Vec<Poly> = gens
        .iter()
        .flat_map(|&g| {
            x.rows_as_polys().map(move |p| Poly {
                lo: p.lo + g as i64,
                coeffs: p.coeffs,
            })
        })
        .collect();
    let mx = generate(ring, &polys).expect("nonzero");
    let hi = x.order + w as i64;
    Rref::from_rows(
        ring.field(),
        w,
        mx.rows_as_polys().map(|p| p.slice(x.order, hi)),
    )
}
