//! Normal-form shapes of ideals in the classified semigroup rings.
//!
//! A shape template lists, for each minimal generator, its lead offset from
//! the ideal's order and the offsets where a free coefficient may appear.
//! Classification reads the canonical reduced generators of an ideal, matches
//! them against the templates for that order, and checks that expanding the
//! template with the extracted parameters reproduces the ideal.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::window::{self, Poly};
use super::{reduced_rows, Ideal};
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ShapeFamily {
    Principal,
    /// Two generators, the second one's lead `2r - 1` above the order in
    /// `K[[t^2, t^(2r+1)]]`, or `(t^n + a t^(n+1), t^(n+2))` in `K[[t^3,t^4,t^5]]`.
    TwoGenA,
    /// Two generators with leads `n` and `n + 1`.
    TwoGenB,
    /// Two generators in `K[[t^2, t^(2r+1)]]` whose second lead sits at an
    /// odd offset strictly between 1 and `2r - 1`.
    TwoGenAt(u32),
    ThreeGen,
}

impl fmt::Display for ShapeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeFamily::Principal => f.write_str("PRINCIPAL"),
            ShapeFamily::TwoGenA => f.write_str("TWO_GEN_A"),
            ShapeFamily::TwoGenB => f.write_str("TWO_GEN_B"),
            ShapeFamily::TwoGenAt(l) => write!(f, "TWO_GEN_L{l}"),
            ShapeFamily::ThreeGen => f.write_str("THREE_GEN"),
        }
    }
}

/// Generator layout: `(lead offset, free offsets)` per generator.
type Template = Vec<(usize, Vec<usize>)>;

/// A classified ideal: family, order and the free coefficients in template
/// order (generator by generator, offsets ascending).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ShapeTag {
    pub family: ShapeFamily,
    pub order: u32,
    pub params: Vec<u8>,
    #[serde(skip)]
    template: Template,
}

impl fmt::Display for ShapeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}", self.family, self.order)?;
        for (i, p) in self.params.iter().enumerate() {
            f.write_str(if i == 0 { "; " } else { ", " })?;
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl ShapeTag {
    /// The generators described by the tag, as exact polynomials.
    pub fn generators(&self, ring: &Ring) -> Vec<TruncatedSeries> {
        let n = self.order as usize;
        let bound = n + ring.width();
        self.polys()
            .into_iter()
            .map(|p| {
                let mut c = vec![0i64; bound];
                for (j, &x) in p.coeffs.iter().enumerate() {
                    c[n + j] = x as i64;
                }
                TruncatedSeries::from_coeffs(ring.field(), c)
            })
            .collect()
    }

    fn polys(&self) -> Vec<Poly> {
        let mut params = self.params.iter();
        self.template
            .iter()
            .map(|(lead, free)| {
                let len = free.iter().copied().chain([*lead]).max().unwrap() + 1;
                let mut coeffs = vec![0u8; len];
                coeffs[*lead] = 1;
                for &o in free {
                    coeffs[o] = *params.next().expect("parameter count matches template");
                }
                Poly {
                    lo: self.order as i64,
                    coeffs,
                }
            })
            .collect()
    }

    /// Canonical ideal generated by the tag's generators.
    pub fn expand(&self, ring: &Arc<Ring>) -> Ideal {
        let w = window::generate(ring, &self.polys()).expect("shape generators are nonzero");
        Ideal::from_window(ring, w)
    }
}

/// Templates for proper ideals of order `n`.
fn templates(ring: &Ring, n: u32) -> Result<Vec<(ShapeFamily, Template)>> {
    let s = ring.semigroup();
    let n_i = n as i64;
    if s.is_full() {
        return Ok(vec![(ShapeFamily::Principal, vec![(0, vec![])])]);
    }
    if let Some(r) = s.two_odd_parameter() {
        let w = 2 * r as usize;
        let odd_in_s = |below: usize| -> Vec<usize> {
            (1..below)
                .step_by(2)
                .filter(|&o| ring.in_s(n_i + o as i64))
                .collect()
        };
        let mut out = vec![(ShapeFamily::Principal, vec![(0, odd_in_s(w))])];
        for l in (1..w).step_by(2).filter(|&l| ring.in_s(n_i + l as i64)) {
            let family = if l == 1 {
                ShapeFamily::TwoGenB
            } else if l == w - 1 {
                ShapeFamily::TwoGenA
            } else {
                ShapeFamily::TwoGenAt(l as u32)
            };
            out.push((family, vec![(0, odd_in_s(l)), (l, vec![])]));
        }
        return Ok(out);
    }
    if s.is_three_four_five() {
        return Ok(vec![
            (ShapeFamily::Principal, vec![(0, vec![1, 2])]),
            (ShapeFamily::TwoGenA, vec![(0, vec![1]), (2, vec![])]),
            (ShapeFamily::TwoGenB, vec![(0, vec![2]), (1, vec![2])]),
            (
                ShapeFamily::ThreeGen,
                vec![(0, vec![]), (1, vec![]), (2, vec![])],
            ),
        ]);
    }
    Err(Error::UnsupportedSemigroup(s.generators().to_vec()))
}

/// Classifies a proper ideal into its normal-form family.
pub fn classify_shape(ideal: &Ideal) -> Result<ShapeTag> {
    let ring = ideal.ring();
    let w = match ideal.window() {
        Some(w) if ideal.is_proper() => w,
        _ => return Err(Error::NotProper),
    };
    let n = w.order as u32;
    let candidates = templates(ring, n)?;
    let rows = reduced_rows(ring, &w);
    let leads: Vec<usize> = rows
        .iter()
        .map(|r| r.iter().position(|&c| c != 0).unwrap())
        .collect();
    for (family, template) in candidates {
        if template.iter().map(|(l, _)| *l).ne(leads.iter().copied()) {
            continue;
        }
        let fits = rows.iter().zip(&template).all(|(row, (lead, free))| {
            row.iter()
                .enumerate()
                .all(|(j, &c)| c == 0 || j == *lead || free.contains(&j))
        });
        if !fits {
            continue;
        }
        let params = rows
            .iter()
            .zip(&template)
            .flat_map(|(row, (_, free))| free.iter().map(move |&o| row[o]))
            .collect();
        let tag = ShapeTag {
            family,
            order: n,
            params,
            template,
        };
        if tag.expand(ring) == *ideal {
            return Ok(tag);
        }
        return Err(Error::UnclassifiedIdeal(format!(
            "{ideal}: {tag} does not reproduce the ideal"
        )));
    }
    Err(Error::UnclassifiedIdeal(ideal.to_string()))
}

/// Normal form of the principal ideal `(f)`.
pub fn canonical_principal_form(ring: &Arc<Ring>, f: &TruncatedSeries) -> Result<ShapeTag> {
    match f.order() {
        None => return Err(Error::ZeroInput),
        Some(0) => return Err(Error::UnitInput),
        Some(_) => {}
    }
    let s = ring.semigroup();
    if !(s.is_full() || s.two_odd_parameter().is_some() || s.is_three_four_five()) {
        return Err(Error::UnsupportedSemigroup(s.generators().to_vec()));
    }
    let ideal = Ideal::principal(ring, f)?;
    let tag = classify_shape(&ideal)?;
    debug_assert_eq!(tag.family, ShapeFamily::Principal);
    Ok(tag)
}
