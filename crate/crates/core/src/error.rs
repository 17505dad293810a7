use thiserror::Error;

/// Failure modes shared by every layer of the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("integer too large to factor: {0}")]
    FactorizationTooLarge(String),

    #[error("unit part is not a quadratic residue mod {p}")]
    NonResidue { p: u64 },

    #[error("odd valuation {valuation} has no square root")]
    OddValuation { valuation: i64 },

    #[error("insufficient p-adic precision: {0}")]
    InsufficientPrecision(String),

    #[error("root outside the residue disk: {0}")]
    DiskViolation(String),

    #[error("degenerate parameter {parameter}: {reason}")]
    DegenerateParameter { parameter: String, reason: String },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("verification failure: {0}")]
    VerificationFailure(String),

    #[error("quotient map degenerates at a point at infinity")]
    MapDegenerates,

    #[error("bad reduction at p = {p}")]
    BadPrime { p: u64 },

    #[error("points lie in different residue disks")]
    NotTiny,

    #[error("prime {p} unusable: {reason}")]
    PrimeUnusable { p: u64, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
