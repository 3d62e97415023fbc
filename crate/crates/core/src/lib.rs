//! Ideals and closure operations in numerical semigroup rings `K[[t^S]]`
//! over small prime fields, with an exhaustive search for prime and
//! semiprime operations on finite sets of ideals.

#![allow(clippy::needless_range_loop)]

pub mod closure;
pub mod error;
pub mod field;
pub mod ideal;
pub mod linalg;
pub mod ring;
pub mod search;
pub mod semigroup;
pub mod series;

pub use closure::{Axiom, AxiomReport, ClosureOperation};
pub use error::{Error, Result};
pub use field::PrimeField;
pub use ideal::{Ideal, IdealKind, ShapeFamily, ShapeTag};
pub use ring::Ring;
pub use semigroup::NumericalSemigroup;
pub use series::TruncatedSeries;
