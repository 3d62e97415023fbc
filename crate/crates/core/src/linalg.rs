//! Dense row reduction over F_p for the small matrices used by ideal windows.

use crate::field::PrimeField;

/// A subspace of `F_p^ncols` held as a reduced row echelon basis.
///
/// Rows are sorted by pivot column, every pivot is 1 and is the only nonzero
/// entry in its column. Two subspaces are equal iff their bases are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rref {
    ncols: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Rref {
    pub fn zero(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Row-reduces an arbitrary spanning set.
    pub fn from_rows(
        field: PrimeField,
        ncols: usize,
        rows: impl IntoIterator<Item = Vec<u8>>,
    ) -> Self {
        let mut out = Self::zero(ncols);
        for r in rows {
            out.insert(field, r);
        }
        out
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn into_rows(self) -> Vec<Vec<u8>> {
        self.rows
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, field: PrimeField, v: &mut [u8]) {
        debug_assert_eq!(v.len(), self.ncols);
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                axpy(field, v, field.neg(c), row);
            }
        }
    }

    pub fn contains(&self, field: PrimeField, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|&c| c == 0)
    }

    pub fn contains_space(&self, field: PrimeField, other: &Rref) -> bool {
        other.rows.iter().all(|r| self.contains(field, r))
    }

    /// Adds a vector to the span, keeping the basis fully reduced. Returns
    /// false if the vector was already in the span.
    pub fn insert(&mut self, field: PrimeField, mut v: Vec<u8>) -> bool {
        assert_eq!(
            v.len(),
            self.ncols,
            "row length does not match column count"
        );
        self.reduce(field, &mut v);
        let Some(pc) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = field.inv(v[pc]);
        for c in v.iter_mut() {
            *c = field.mul(*c, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                axpy(field, row, field.neg(c), &v);
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, v);
        true
    }

    /// Intersection via the Zassenhaus trick: reduce `[u | u]` and `[v | 0]`;
    /// rows with a vanishing left half span the intersection.
    pub fn intersect(&self, field: PrimeField, other: &Rref) -> Rref {
        assert_eq!(self.ncols, other.ncols);
        let n = self.ncols;
        let doubled = self
            .rows
            .iter()
            .map(|u| [u.as_slice(), u.as_slice()].concat())
            .chain(other.rows.iter().map(|v| {
                let mut w = v.clone();
                w.resize(2 * n, 0);
                w
            }));
        let big = Rref::from_rows(field, 2 * n, doubled);
        Rref::from_rows(
            field,
            n,
            big.rows
                .iter()
                .zip(&big.pivots)
                .filter(|(_, &p)| p >= n)
                .map(|(r, _)| r[n..].to_vec()),
        )
    }

    pub fn sum(&self, field: PrimeField, other: &Rref) -> Rref {
        let mut out = self.clone();
        for r in &other.rows {
            out.insert(field, r.clone());
        }
        out
    }
}

/// `y += a * x`
#[inline]
pub fn axpy(field: PrimeField, y: &mut [u8], a: u8, x: &[u8]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        if xi != 0 {
            *yi = field.add(*yi, field.mul(a, xi));
        }
    }
}
