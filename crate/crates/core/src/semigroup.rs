//! Numerical semigroups: membership, gaps, Frobenius number and conductor.

use serde::Serialize;

use crate::error::{Error, Result};

/// A numerical semigroup `S ⊆ ℕ₀` given by a set of generators.
///
/// Membership below the conductor is stored as a bitmap; every exponent at or
/// above the conductor belongs to `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct NumericalSemigroup {
    generators: Vec<u32>,
    gaps: Vec<u32>,
    frobenius: i64,
    conductor: u32,
    #[serde(skip)]
    below_conductor: Vec<bool>,
}

impl NumericalSemigroup {
    pub fn from_generators(gens: &[u32]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if let Some(&g) = gens.iter().find(|&&g| g == 0) {
            return Err(Error::InvalidGenerator(g));
        }
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let g = sorted.iter().copied().fold(0, gcd);
        if g != 1 {
            return Err(Error::NotCoprime(sorted, g));
        }

        // Once g1 consecutive exponents are members, every larger exponent is
        // too, so the sieve stops at the first such run.
        let g1 = sorted[0] as usize;
        let mut member = vec![true];
        let mut run = 1usize;
        while run < g1 {
            let e = member.len();
            let m = sorted
                .iter()
                .any(|&g| (g as usize) <= e && member[e - g as usize]);
            member.push(m);
            run = if m { run + 1 } else { 0 };
        }
        let bound = member.len() - 1;
        let gaps: Vec<u32> = (1..=bound as u32)
            .filter(|&e| !member[e as usize])
            .collect();
        let frobenius = gaps.last().map_or(-1, |&f| f as i64);
        let conductor = (frobenius + 1) as u32;
        member.truncate(conductor as usize);

        let generators = minimal_generators(&sorted, &member, conductor);

        Ok(Self {
            generators,
            gaps,
            frobenius,
            conductor,
            below_conductor: member,
        })
    }

    /// Minimal generators in increasing order.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn gaps(&self) -> &[u32] {
        &self.gaps
    }

    /// Largest gap, or -1 when `S = ℕ₀`.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Smallest nonzero element (the multiplicity).
    pub fn multiplicity(&self) -> u32 {
        self.generators[0]
    }

    /// True when `S = ℕ₀`, i.e. the ring is the discrete valuation ring `K[[t]]`.
    pub fn is_full(&self) -> bool {
        self.conductor == 0
    }

    #[inline]
    pub fn contains(&self, e: u64) -> bool {
        e >= self.conductor as u64 || self.below_conductor[e as usize]
    }

    /// Membership for signed exponents; negative exponents are never members.
    #[inline]
    pub fn contains_i(&self, e: i64) -> bool {
        e >= 0 && self.contains(e as u64)
    }

    /// Elements of `S` strictly below `bound`.
    pub fn elements_below(&self, bound: u64) -> impl Iterator<Item = u64> + '_ {
        (0..bound).filter(move |&e| self.contains(e))
    }

    /// `r` when this semigroup is `<2, 2r+1>` with `r >= 1`.
    pub fn two_odd_parameter(&self) -> Option<u32> {
        match self.generators.as_slice() {
            [2, odd] if odd % 2 == 1 => Some((odd - 1) / 2),
            _ => None,
        }
    }

    /// True for `<3, 4, 5>`.
    pub fn is_three_four_five(&self) -> bool {
        self.generators == [3, 4, 5]
    }
}

fn contains_raw(member: &[bool], conductor: u32, e: u32) -> bool {
    if e >= conductor {
        true
    } else {
        member[e as usize]
    }
}

fn minimal_generators(sorted: &[u32], member: &[bool], conductor: u32) -> Vec<u32> {
    // g is redundant iff g = a + b with a, b nonzero members of S.
    sorted
        .iter()
        .copied()
        .filter(|&g| {
            !(1..g).any(|a| {
                contains_raw(member, conductor, a) && contains_raw(member, conductor, g - a)
            })
        })
        .collect()
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn two_five() {
        let s = NumericalSemigroup::from_generators(&[2, 5]).unwrap();
        assert_eq!(s.conductor(), 4);
        assert_eq!(s.gaps(), &[1, 3]);
        assert_eq!(s.frobenius(), 3);
        assert!(!s.contains(3));
        assert!(s.contains(0));
    }

    #[test]
    fn full_semigroup() {
        let s = NumericalSemigroup::from_generators(&[1]).unwrap();
        assert_eq!(s.conductor(), 0);
        assert!(s.gaps().is_empty());
        assert_eq!(s.frobenius(), -1);
        assert!(s.is_full());
    }

    #[test]
    fn three_four_five() {
        let s = NumericalSemigroup::from_generators(&[5, 4, 3]).unwrap();
        assert_eq!(s.conductor(), 3);
        assert_eq!(s.gaps(), &[1, 2]);
        assert!(s.contains(7));
        assert!(s.is_three_four_five());
    }

    #[test]
    fn errors() {
        assert_eq!(
            NumericalSemigroup::from_generators(&[2, 4]).unwrap_err(),
            Error::NotCoprime(vec![2, 4], 2)
        );
        assert_eq!(
            NumericalSemigroup::from_generators(&[]).unwrap_err(),
            Error::EmptyGenerators
        );
        assert!(NumericalSemigroup::from_generators(&[0, 1]).is_err());
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let s = NumericalSemigroup::from_generators(&[2, 4, 5, 9]).unwrap();
        assert_eq!(s.generators(), &[2, 5]);
    }

    #[test]
    fn two_odd_conductor() {
        for r in 1..=4u32 {
            let s = NumericalSemigroup::from_generators(&[2, 2 * r + 1]).unwrap();
            assert_eq!(s.conductor(), 2 * r);
            assert_eq!(s.two_odd_parameter(), Some(r));
        }
    }

    /// Brute-force membership: e is a nonnegative combination of the generators.
    fn representable(gens: &[u32], e: u32) -> bool {
        let mut reach = vec![false; e as usize + 1];
        reach[0] = true;
        for x in 0..e as usize {
            if reach[x] {
                for &g in gens {
                    if x + g as usize <= e as usize {
                        reach[x + g as usize] = true;
                    }
                }
            }
        }
        reach[e as usize]
    }

    proptest! {
        #[test]
        fn closed_under_addition(gens in proptest::collection::vec(2u32..12, 1..4), extra in 2u32..12) {
            let mut gens = gens;
            gens.push(extra);
            let Ok(s) = NumericalSemigroup::from_generators(&gens) else { return Ok(()); };
            let top = 2 * s.conductor() as u64 + 2;
            for a in 0..=top {
                for b in 0..=top {
                    if s.contains(a) && s.contains(b) {
                        prop_assert!(s.contains(a + b));
                    }
                }
            }
            if let Some(&f) = s.gaps().last() {
                prop_assert_eq!(s.frobenius(), f as i64);
                prop_assert_eq!(s.conductor() as i64, s.frobenius() + 1);
            }
            for e in 0..(s.conductor() + 5) {
                prop_assert_eq!(s.contains(e as u64), representable(&gens, e));
            }
        }
    }
}
