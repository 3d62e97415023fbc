use thiserror::Error;

/// Errors raised across the library. The variant name doubles as the
/// machine-readable error code printed by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generators {0:?} are not coprime (gcd {1})")]
    NotCoprime(Vec<u32>, u32),
    #[error("invalid generator {0}: generators must be positive")]
    InvalidGenerator(u32),
    #[error("{0} is not a supported prime modulus (2 <= p <= 97)")]
    InvalidPrime(u32),
    #[error("operands live over different fields (p = {0} and p = {1})")]
    FieldMismatch(u32, u32),
    #[error("series is not a unit (order {0:?})")]
    NotAUnit(Option<usize>),
    #[error("cannot parse series: {0}")]
    Parse(String),
    #[error("generator known only modulo t^{bound}, need t^{needed}")]
    InsufficientPrecision { bound: usize, needed: usize },
    #[error("semigroup {0:?} is outside the classified families")]
    UnsupportedSemigroup(Vec<u32>),
    #[error("input is a unit")]
    UnitInput,
    #[error("input is zero")]
    ZeroInput,
    #[error("ideals belong to different rings")]
    RingMismatch,
    #[error("operation requires a proper nonzero ideal")]
    NotProper,
    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    InfeasibleEnumeration { needed: u128, budget: u128 },
    #[error("ideal {0} matches none of the known shape families")]
    UnclassifiedIdeal(String),
    #[error("operation {op} requires ring {required}")]
    WrongRing { op: String, required: String },
    #[error("table operation {0} consulted outside its domain")]
    DomainGap(String),
    #[error("precondition failed: axiom {0} is violated")]
    PreconditionNotMet(String),
    #[error("search budget of {budget} nodes exhausted after {explored} nodes")]
    BudgetExceeded { budget: u64, explored: u64 },
    #[error("{0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyGenerators => "EmptyGenerators",
            Error::NotCoprime(..) => "NotCoprime",
            Error::InvalidGenerator(_) => "InvalidGenerator",
            Error::InvalidPrime(_) => "InvalidPrime",
            Error::FieldMismatch(..) => "FieldMismatch",
            Error::NotAUnit(_) => "NotAUnit",
            Error::Parse(_) => "Parse",
            Error::InsufficientPrecision { .. } => "InsufficientPrecision",
            Error::UnsupportedSemigroup(_) => "UnsupportedSemigroup",
            Error::UnitInput => "UnitInput",
            Error::ZeroInput => "ZeroInput",
            Error::RingMismatch => "RingMismatch",
            Error::NotProper => "NotProper",
            Error::InfeasibleEnumeration { .. } => "InfeasibleEnumeration",
            Error::UnclassifiedIdeal(_) => "UnclassifiedIdeal",
            Error::WrongRing { .. } => "WrongRing",
            Error::DomainGap(_) => "DomainGap",
            Error::PreconditionNotMet(_) => "PreconditionNotMet",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
