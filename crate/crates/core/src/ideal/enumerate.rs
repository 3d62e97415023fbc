//! Exhaustive enumeration of ideals up to a given order.
//!
//! For each order `n ∈ S` the candidates are the reduced row echelon matrices
//! on the support-masked window columns whose pivot set contains column 0.
//! A candidate is an ideal iff its row space is closed under multiplication
//! by each semigroup generator (projected back onto the window).

use std::sync::Arc;

use rayon::prelude::*;

use super::window::Window;
use super::Ideal;
use crate::error::{Error, Result};
use crate::linalg::Rref;
use crate::ring::Ring;

/// Default cap on the number of candidate matrices examined.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 50_000_000;

/// One cell of the enumeration: an order and a pivot set.
struct Cell {
    order: i64,
    pivots: Vec<usize>,
    /// `(row, column)` positions of free entries.
    free: Vec<(usize, usize)>,
}

fn cells(ring: &Ring, max_order: u32) -> Vec<Cell> {
    let w = ring.width();
    let mut out = Vec::new();
    for n in 1..=max_order as i64 {
        if !ring.in_s(n) {
            continue;
        }
        let mask: Vec<usize> = (0..w).filter(|&j| ring.in_s(n + j as i64)).collect();
        let rest = &mask[1..];
        for bits in 0u64..(1u64 << rest.len()) {
            let mut pivots = vec![0usize];
            pivots.extend(
                rest.iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .map(|(_, &j)| j),
            );
            let free = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| {
                    let pivots = &pivots;
                    mask.iter()
                        .filter(move |&&j| j > p && !pivots.contains(&j))
                        .map(move |&j| (r, j))
                })
                .collect();
            out.push(Cell {
                order: n,
                pivots,
                free,
            });
        }
    }
    out
}

/// Number of candidate matrices `enumerate_ideals` examines.
pub fn enumeration_cost(ring: &Ring, max_order: u32) -> u128 {
    let p = ring.field().p() as u128;
    cells(ring, max_order)
        .iter()
        .map(|c| p.saturating_pow(c.free.len() as u32))
        .fold(0u128, u128::saturating_add)
}

/// Is the row space closed under `t^g ·` for every generator `g`?
fn is_closed(ring: &Ring, basis: &Rref) -> bool {
    let f = ring.field();
    let w = ring.width();
    ring.semigroup().generators().iter().all(|&g| {
        let g = g as usize;
        g >= w
            || basis.rows().iter().all(|r| {
                let mut v = vec![0u8; w];
                v[g..].copy_from_slice(&r[..w - g]);
                basis.contains(f, &v)
            })
    })
}

fn enumerate_cell(ring: &Ring, cell: &Cell) -> Vec<Window> {
    let w = ring.width();
    let p = ring.field().p();
    let mut digits = vec![0u8; cell.free.len()];
    let mut out = Vec::new();
    loop {
        let mut rows: Vec<Vec<u8>> = cell
            .pivots
            .iter()
            .map(|&pc| {
                let mut r = vec![0u8; w];
                r[pc] = 1;
                r
            })
            .collect();
        for (&(r, c), &d) in cell.free.iter().zip(&digits) {
            rows[r][c] = d;
        }
        let basis = Rref::from_rows(ring.field(), w, rows);
        if is_closed(ring, &basis) {
            out.push(Window {
                order: cell.order,
                basis,
            });
        }
        // Odometer step.
        let mut i = 0;
        loop {
            if i == digits.len() {
                return out;
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// All ideals with order at most `max_order`: the unit ideal followed by the
/// proper ideals sorted by order and window bytes.
pub fn enumerate_ideals(ring: &Arc<Ring>, max_order: u32) -> Result<Vec<Ideal>> {
    enumerate_ideals_with_budget(ring, max_order, DEFAULT_ENUMERATION_BUDGET)
}

pub fn enumerate_ideals_with_budget(
    ring: &Arc<Ring>,
    max_order: u32,
    budget: u128,
) -> Result<Vec<Ideal>> {
    let needed = enumeration_cost(ring, max_order);
    if needed > budget {
        return Err(Error::InfeasibleEnumeration { needed, budget });
    }
    let cells = cells(ring, max_order);
    let mut windows: Vec<Window> = cells
        .par_iter()
        .flat_map_iter(|c| enumerate_cell(ring, c))
        .collect();
    windows.sort();
    let mut out = vec![Ideal::unit(ring)];
    out.extend(windows.into_iter().map(|w| Ideal::from_window(ring, w)));
    Ok(out)
}
