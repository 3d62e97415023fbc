//! Closure operations on ideal sets: built-in rules, finite tables, axiom
//! checking and the fractional-chain demonstrations.

mod axioms;
mod fractional;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

pub use axioms::{
    check_axioms, evaluate_instance, sakuma_consistency, Axiom, AxiomReport, AxiomResult,
    InstanceOutcome, SakumaReport, Violation,
};
pub use fractional::{
    bounded_dvr_candidates, certify_identity_only, chain_semiprime_operations,
    element_chain_candidates, fractional_violation, ChainBase, FractionalCandidate,
    FractionalChain, FractionalIdeal, FractionalVerdict, FractionalWitness, WitnessKind,
};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::Ring;

pub type RuleFn = Arc<dyn Fn(&Ideal) -> Ideal + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OpKind {
    Rule,
    Table,
}

#[derive(Clone)]
enum Body {
    Rule(RuleFn),
    Table(BTreeMap<Ideal, Ideal>),
}

/// A map from ideals to ideals, either a total rule or a finite table.
#[derive(Clone)]
pub struct ClosureOperation {
    name: String,
    ring: Arc<Ring>,
    includes_zero: bool,
    body: Body,
}

impl fmt::Debug for ClosureOperation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClosureOperation")
            .field("name", &self.name)
            .field("kind", &self.kind())
            .field("includes_zero", &self.includes_zero)
            .finish()
    }
}

impl ClosureOperation {
    pub fn rule(
        name: impl Into<String>,
        ring: &Arc<Ring>,
        includes_zero: bool,
        f: impl Fn(&Ideal) -> Ideal + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            ring: ring.clone(),
            includes_zero,
            body: Body::Rule(Arc::new(f)),
        }
    }

    /// A finite operation. Keys and values must be ideals of `ring`; every
    /// value must itself be a key.
    pub fn table(
        name: impl Into<String>,
        ring: &Arc<Ring>,
        includes_zero: bool,
        map: BTreeMap<Ideal, Ideal>,
    ) -> Result<Self> {
        for (k, v) in &map {
            if **k.ring() != **ring || **v.ring() != **ring {
                return Err(Error::RingMismatch);
            }
            if !map.contains_key(v) {
                return Err(Error::DomainGap(format!("table value {v} is not a key")));
            }
        }
        Ok(Self {
            name: name.into(),
            ring: ring.clone(),
            includes_zero,
            body: Body::Table(map),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn includes_zero(&self) -> bool {
        self.includes_zero
    }

    pub fn with_includes_zero(mut self, includes_zero: bool) -> Self {
        self.includes_zero = includes_zero;
        self
    }

    pub fn kind(&self) -> OpKind {
        match self.body {
            Body::Rule(_) => OpKind::Rule,
            Body::Table(_) => OpKind::Table,
        }
    }

    pub fn as_table(&self) -> Option<&BTreeMap<Ideal, Ideal>> {
        match &self.body {
            Body::Table(t) => Some(t),
            Body::Rule(_) => None,
        }
    }

    /// `None` when a table operation is consulted outside its domain.
    pub fn try_apply(&self, ideal: &Ideal) -> Option<Ideal> {
        match &self.body {
            Body::Rule(f) => Some(f(ideal)),
            Body::Table(t) => t.get(ideal).cloned(),
        }
    }

    pub fn apply(&self, ideal: &Ideal) -> Result<Ideal> {
        self.try_apply(ideal)
            .ok_or_else(|| Error::DomainGap(format!("{} is undefined on {ideal}", self.name)))
    }

    /// The table of this operation on a finite set of ideals.
    pub fn restrict_to(&self, ideals: &[Ideal]) -> Result<Self> {
        let map = ideals
            .iter()
            .map(|i| Ok((i.clone(), self.apply(i)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Self {
            name: self.name.clone(),
            ring: self.ring.clone(),
            includes_zero: self.includes_zero,
            body: Body::Table(map),
        })
    }

    /// Does the operation agree with `other` on every listed ideal?
    pub fn agrees_on(&self, other: &Self, ideals: &[Ideal]) -> bool {
        ideals
            .iter()
            .all(|i| self.try_apply(i).is_some() && self.try_apply(i) == other.try_apply(i))
    }

    pub fn identity(ring: &Arc<Ring>) -> Self {
        Self::rule("identity", ring, true, |i| i.clone())
    }

    /// `I ↦ {f ∈ R : ord f >= ord I}`.
    pub fn integral_closure(ring: &Arc<Ring>) -> Self {
        Self::rule("integral_closure", ring, true, |i| {
            if i.is_proper() {
                i.integral_closure().expect("proper ideal")
            } else {
                i.clone()
            }
        })
    }

    /// On `K[[t]]`: `P^i ↦ P^min(i, m)`, `(0) ↦ (0)`.
    pub fn dvr_f_m(ring: &Arc<Ring>, m: u32) -> Result<Self> {
        require_dvr(ring, "dvr_f_m")?;
        let r = ring.clone();
        Ok(Self::rule(
            format!("dvr_f_m:{m}"),
            ring,
            true,
            move |i| match i.order() {
                None => i.clone(),
                Some(n) => Ideal::order_filter(&r, n.min(m) as i64),
            },
        ))
    }

    /// On `K[[t]]`: `P^i ↦ P^min(i, m)`, `(0) ↦ P^m`.
    pub fn dvr_g_m(ring: &Arc<Ring>, m: u32) -> Result<Self> {
        require_dvr(ring, "dvr_g_m")?;
        let r = ring.clone();
        Ok(Self::rule(format!("dvr_g_m:{m}"), ring, true, move |i| {
            let n = i.order().unwrap_or(m);
            Ideal::order_filter(&r, n.min(m) as i64)
        }))
    }

    /// On `K[[t^3,t^4,t^5]]`: principal ideals are fixed and every other
    /// proper ideal of order `n` maps to `(t^n, t^(n+1), t^(n+2))`.
    pub fn fc_345(ring: &Arc<Ring>) -> Result<Self> {
        if !ring.semigroup().is_three_four_five() {
            return Err(Error::WrongRing {
                op: "fc_345".into(),
                required: "K[[t^3,t^4,t^5]]".into(),
            });
        }
        let r = ring.clone();
        Ok(Self::rule("fc_345", ring, true, move |i| {
            if i.is_proper() && !i.is_principal() {
                Ideal::order_filter(&r, i.order().unwrap() as i64)
            } else {
                i.clone()
            }
        }))
    }

    /// Looks up a built-in by name: `identity`, `integral_closure`,
    /// `fc_345`, `dvr_f_m:M`, `dvr_g_m:M` (also accepted as `dvr_f_m(M)`).
    pub fn builtin(name: &str, ring: &Arc<Ring>) -> Result<Self> {
        let name = name.trim();
        let param = |prefix: &str| -> Option<Result<u32>> {
            let rest = name.strip_prefix(prefix)?;
            let rest = rest
                .strip_prefix(':')
                .or_else(|| rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')))?;
            Some(
                rest.trim()
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad parameter in {name:?}"))),
            )
        };
        match name {
            "identity" => Ok(Self::identity(ring)),
            "integral_closure" => Ok(Self::integral_closure(ring)),
            "fc_345" => Self::fc_345(ring),
            _ => {
                if let Some(m) = param("dvr_f_m") {
                    Self::dvr_f_m(ring, m?)
                } else if let Some(m) = param("dvr_g_m") {
                    Self::dvr_g_m(ring, m?)
                } else {
                    Err(Error::InvalidArgument(format!(
                        "unknown operation {name:?}"
                    )))
                }
            }
        }
    }
}

fn require_dvr(ring: &Ring, op: &str) -> Result<()> {
    if ring.is_dvr() {
        Ok(())
    } else {
        Err(Error::WrongRing {
            op: op.into(),
            required: "K[[t]]".into(),
        })
    }
}

/// The ideals `P^0, ..., P^depth` of `K[[t]]`, optionally followed by `(0)`.
pub fn dvr_ideal_chain(ring: &Arc<Ring>, depth: u32, include_zero: bool) -> Result<Vec<Ideal>> {
    require_dvr(ring, "dvr_ideal_chain")?;
    let mut out: Vec<Ideal> = (0..=depth)
        .map(|i| Ideal::order_filter(ring, i as i64))
        .collect();
    if include_zero {
        out.push(Ideal::zero(ring));
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
