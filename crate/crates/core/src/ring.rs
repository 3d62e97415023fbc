use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::field::PrimeField;
use crate::semigroup::NumericalSemigroup;

/// The semigroup ring `K[[t^S]]` over a prime field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Ring {
    semigroup: NumericalSemigroup,
    field: PrimeField,
}

impl Ring {
    pub fn new(semigroup: NumericalSemigroup, field: PrimeField) -> Arc<Self> {
        Arc::new(Self { semigroup, field })
    }

    /// Shorthand for `K[[t^gens]]` over `F_p`.
    pub fn from_gens(gens: &[u32], p: u32) -> Result<Arc<Self>> {
        Ok(Self::new(
            NumericalSemigroup::from_generators(gens)?,
            PrimeField::new(p)?,
        ))
    }

    /// The discrete valuation ring `F_p[[t]]`.
    pub fn dvr(p: u32) -> Result<Arc<Self>> {
        Self::from_gens(&[1], p)
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Width of the canonical window: every ideal of order `n` contains
    /// `t^(n + width) K[[t]]`. Equal to the conductor, or 1 for `K[[t]]`.
    pub fn width(&self) -> usize {
        (self.semigroup.conductor() as usize).max(1)
    }

    pub fn is_dvr(&self) -> bool {
        self.semigroup.is_full()
    }

    #[inline]
    pub(crate) fn in_s(&self, e: i64) -> bool {
        self.semigroup.contains_i(e)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .semigroup
            .generators()
            .iter()
            .map(|g| format!("t^{g}"))
            .collect();
        write!(f, "F_{}[[{}]]", self.field.p(), gens.join(","))
    }
}
