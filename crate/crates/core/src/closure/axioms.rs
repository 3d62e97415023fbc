//! Exhaustive axiom checks for closure operations on finite ideal sets.
//!
//! Every instance is evaluated by [`evaluate_instance`], which is also what
//! witness replay calls, so a reported violation always reproduces.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{ClosureOperation, OpKind};
use crate::error::{Error, Result};
use crate::ideal::Ideal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Axiom {
    /// `f(I) ⊇ I`
    Extensive,
    /// `I ⊆ J ⇒ f(I) ⊆ f(J)`
    Monotone,
    /// `f(f(I)) = f(I)`
    Idempotent,
    /// `f(I) f(J) ⊆ f(IJ)`
    Product,
    /// `f(bI) = b f(I)` for principal `(b)`
    PrincipalScaling,
    /// `f(I) + f(J) ⊆ f(I + J)`
    Sum,
    /// `f(R) = R`
    UnitFixed,
    /// `f(f(I) ∩ f(J)) = f(I) ∩ f(J)`
    Intersection,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::Extensive,
        Axiom::Monotone,
        Axiom::Idempotent,
        Axiom::Product,
        Axiom::PrincipalScaling,
        Axiom::Sum,
        Axiom::UnitFixed,
        Axiom::Intersection,
    ];

    pub fn number(self) -> u8 {
        Self::ALL.iter().position(|&a| a == self).unwrap() as u8 + 1
    }

    pub fn from_number(n: u8) -> Result<Self> {
        Self::ALL
            .get((n as usize).wrapping_sub(1))
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("axiom number {n} is not in 1..=8")))
    }

    /// Parses lists such as `1-5`, `1,2,4` or `1-3,5`.
    pub fn parse_list(text: &str) -> Result<Vec<Self>> {
        let bad = || Error::InvalidArgument(format!("bad axiom list {text:?}"));
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (a, b) = match part.split_once('-') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (part, part),
            };
            let a: u8 = a.parse().map_err(|_| bad())?;
            let b: u8 = b.parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            for n in a..=b {
                out.push(Self::from_number(n)?);
            }
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(bad());
        }
        Ok(out)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Extensive => "EXTENSIVE",
            Axiom::Monotone => "MONOTONE",
            Axiom::Idempotent => "IDEMPOTENT",
            Axiom::Product => "PRODUCT",
            Axiom::PrincipalScaling => "PRINCIPAL_SCALING",
            Axiom::Sum => "SUM",
            Axiom::UnitFixed => "UNIT_FIXED",
            Axiom::Intersection => "INTERSECTION",
        };
        write!(f, "{s}({})", self.number())
    }
}

/// Result of evaluating one axiom instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceOutcome {
    Holds,
    /// The two sides that should satisfy the axiom's relation but do not.
    Fails {
        lhs: Ideal,
        rhs: Ideal,
    },
    /// A value outside a table operation's domain would be needed.
    Skipped,
}

/// Evaluates axiom `axiom` on `inputs`:
/// one ideal for 1, 3, 7 (ignored for 7); `(I, J)` with `I ⊆ J` for 2;
/// `(I, J)` for 4, 6, 8; `(b, I)` with `(b)` principal for 5.
pub fn evaluate_instance(
    op: &ClosureOperation,
    axiom: Axiom,
    inputs: &[Ideal],
) -> Result<InstanceOutcome> {
    use InstanceOutcome::*;
    let f = |i: &Ideal| op.try_apply(i);
    macro_rules! get {
        ($e:expr) => {
            match $e {
                Some(v) => v,
                None => return Ok(Skipped),
            }
        };
    }
    let need = |n: usize| -> Result<()> {
        if inputs.len() == n {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("{axiom} takes {n} inputs")))
        }
    };
    let verdict = |ok: bool, lhs: Ideal, rhs: Ideal| if ok { Holds } else { Fails { lhs, rhs } };
    Ok(match axiom {
        Axiom::Extensive => {
            need(1)?;
            let v = get!(f(&inputs[0]));
            verdict(v.contains(&inputs[0])?, v, inputs[0].clone())
        }
        Axiom::Monotone => {
            need(2)?;
            let (small, big) = (&inputs[0], &inputs[1]);
            if !big.contains(small)? {
                return Err(Error::InvalidArgument(
                    "monotone instance needs I ⊆ J".into(),
                ));
            }
            let (fs, fb) = (get!(f(small)), get!(f(big)));
            verdict(fb.contains(&fs)?, fs, fb)
        }
        Axiom::Idempotent => {
            need(1)?;
            let v = get!(f(&inputs[0]));
            let vv = get!(f(&v));
            verdict(vv == v, vv, v)
        }
        Axiom::Product => {
            need(2)?;
            let (fi, fj) = (get!(f(&inputs[0])), get!(f(&inputs[1])));
            let fij = get!(f(&inputs[0].product(&inputs[1])?));
            let lhs = fi.product(&fj)?;
            verdict(fij.contains(&lhs)?, lhs, fij)
        }
        Axiom::PrincipalScaling => {
            need(2)?;
            let (b, i) = (&inputs[0], &inputs[1]);
            if !b.is_principal() {
                return Err(Error::InvalidArgument(format!("{b} is not principal")));
            }
            let lhs = get!(f(&b.product(i)?));
            let rhs = b.product(&get!(f(i)))?;
            verdict(lhs == rhs, lhs, rhs)
        }
        Axiom::Sum => {
            need(2)?;
            let (fi, fj) = (get!(f(&inputs[0])), get!(f(&inputs[1])));
            let lhs = fi.sum(&fj)?;
            let rhs = get!(f(&inputs[0].sum(&inputs[1])?));
            verdict(rhs.contains(&lhs)?, lhs, rhs)
        }
        Axiom::UnitFixed => {
            let unit = Ideal::unit(op.ring());
            let v = get!(f(&unit));
            verdict(v == unit, v, unit)
        }
        Axiom::Intersection => {
            need(2)?;
            let (fi, fj) = (get!(f(&inputs[0])), get!(f(&inputs[1])));
            let meet = fi.intersect(&fj)?;
            let v = get!(f(&meet));
            verdict(v == meet, v, meet)
        }
    })
}

/// A failing instance together with the two sides that disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub inputs: Vec<Ideal>,
    pub lhs: Ideal,
    pub rhs: Ideal,
}

impl Violation {
    /// Re-evaluates the instance; true iff it still fails the same way.
    pub fn replay(&self, op: &ClosureOperation) -> Result<bool> {
        Ok(matches!(
            evaluate_instance(op, self.axiom, &self.inputs)?,
            InstanceOutcome::Fails { ref lhs, ref rhs } if *lhs == self.lhs && *rhs == self.rhs
        ))
    }
}

impl Serialize for Violation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Violation", 3)?;
        let inputs: Vec<String> = self.inputs.iter().map(|i| i.to_string()).collect();
        st.serialize_field("inputs", &inputs)?;
        st.serialize_field("lhs", &self.lhs.to_string())?;
        st.serialize_field("rhs", &self.rhs.to_string())?;
        st.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub passed: bool,
    pub checked: u64,
    pub skipped: u64,
    pub violation_count: u64,
    /// Number of principal multipliers `(b)` used (axiom 5 only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multipliers: Option<usize>,
    /// The first violations in instance order.
    pub witnesses: Vec<Violation>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub operation: String,
    pub kind: OpKind,
    pub ideals: usize,
    pub includes_zero: bool,
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn result(&self, axiom: Axiom) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }
}

/// Stored witnesses per axiom; the count covers all violations.
const MAX_WITNESSES: usize = 16;

fn instances(axiom: Axiom, ideals: &[Ideal]) -> Result<Vec<Vec<Ideal>>> {
    let n = ideals.len();
    let pairs = || (0..n).flat_map(move |i| (i..n).map(move |j| (i, j)));
    Ok(match axiom {
        Axiom::Extensive | Axiom::Idempotent => ideals.iter().map(|i| vec![i.clone()]).collect(),
        Axiom::UnitFixed => vec![vec![Ideal::unit(ideals[0].ring())]],
        Axiom::Monotone => {
            let mut out = Vec::new();
            for a in ideals {
                for b in ideals {
                    if a != b && b.contains(a)? {
                        out.push(vec![a.clone(), b.clone()]);
                    }
                }
            }
            out
        }
        Axiom::Product | Axiom::Sum | Axiom::Intersection => pairs()
            .map(|(i, j)| vec![ideals[i].clone(), ideals[j].clone()])
            .collect(),
        Axiom::PrincipalScaling => {
            let mults: Vec<&Ideal> = principal_multipliers(ideals);
            mults
                .iter()
                .flat_map(|b| ideals.iter().map(move |i| vec![(*b).clone(), i.clone()]))
                .collect()
        }
    })
}

fn principal_multipliers(ideals: &[Ideal]) -> Vec<&Ideal> {
    ideals
        .iter()
        .filter(|b| b.is_proper() && b.is_principal())
        .collect()
}

/// Checks the requested axioms on every instance drawn from `ideals`.
///
/// The zero ideal is dropped from the set when the operation excludes it.
/// Table operations skip (and count) instances that need a value outside the
/// table; rule operations are evaluated exactly and never skip.
pub fn check_axioms(
    op: &ClosureOperation,
    ideals: &[Ideal],
    axioms: &[Axiom],
) -> Result<AxiomReport> {
    let mut set: Vec<Ideal> = ideals
        .iter()
        .filter(|i| op.includes_zero() || !i.is_zero())
        .cloned()
        .collect();
    set.sort();
    set.dedup();
    if set.iter().any(|i| **i.ring() != **op.ring()) {
        return Err(Error::RingMismatch);
    }
    if op.kind() == OpKind::Table {
        if let Some(i) = set.iter().find(|i| op.try_apply(i).is_none()) {
            return Err(Error::DomainGap(format!(
                "{} is undefined on {i}",
                op.name()
            )));
        }
    }
    let mut results = Vec::new();
    for &axiom in axioms {
        if set.is_empty() {
            results.push(AxiomResult {
                axiom,
                passed: true,
                checked: 0,
                skipped: 0,
                violation_count: 0,
                multipliers: None,
                witnesses: Vec::new(),
            });
            continue;
        }
        let inst = instances(axiom, &set)?;
        let outcomes: Vec<(usize, InstanceOutcome)> = inst
            .par_iter()
            .enumerate()
            .map(|(k, inputs)| Ok((k, evaluate_instance(op, axiom, inputs)?)))
            .collect::<Result<_>>()?;
        let mut checked = 0;
        let mut skipped = 0;
        let mut violation_count = 0;
        let mut witnesses = Vec::new();
        for (k, o) in outcomes {
            match o {
                InstanceOutcome::Holds => checked += 1,
                InstanceOutcome::Skipped => skipped += 1,
                InstanceOutcome::Fails { lhs, rhs } => {
                    checked += 1;
                    violation_count += 1;
                    if witnesses.len() < MAX_WITNESSES {
                        witnesses.push(Violation {
                            axiom,
                            inputs: inst[k].clone(),
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
        results.push(AxiomResult {
            axiom,
            passed: violation_count == 0,
            checked,
            skipped,
            violation_count,
            multipliers: (axiom == Axiom::PrincipalScaling)
                .then(|| principal_multipliers(&set).len()),
            witnesses,
        });
    }
    Ok(AxiomReport {
        operation: op.name().to_string(),
        kind: op.kind(),
        ideals: set.len(),
        includes_zero: op.includes_zero(),
        results,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SakumaReport {
    pub preconditions: AxiomReport,
    pub consequences: AxiomReport,
    /// Always true here: on sets of ideals (rather than fractional ideals)
    /// a failure of 4, 6 or 8 is reported but does not contradict the
    /// theorem deriving them from 1, 2, 3, 5 and 7.
    pub informational: bool,
}

/// Checks that 4, 6 and 8 hold whenever 1, 2, 3, 5 and 7 do.
pub fn sakuma_consistency(op: &ClosureOperation, ideals: &[Ideal]) -> Result<SakumaReport> {
    let pre = [
        Axiom::Extensive,
        Axiom::Monotone,
        Axiom::Idempotent,
        Axiom::PrincipalScaling,
        Axiom::UnitFixed,
    ];
    let preconditions = check_axioms(op, ideals, &pre)?;
    let failed: Vec<String> = preconditions
        .results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.axiom.to_string())
        .collect();
    if !failed.is_empty() {
        return Err(Error::PreconditionNotMet(failed.join(", ")));
    }
    let consequences = check_axioms(
        op,
        ideals,
        &[Axiom::Product, Axiom::Sum, Axiom::Intersection],
    )?;
    Ok(SakumaReport {
        preconditions,
        consequences,
        informational: true,
    })
}
