use thiserror::Error;

/// Errors raised by the arithmetic, evaluation and family-construction layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{a} and {b} are not coprime (gcd = {gcd})")]
    NotCoprime { a: i128, b: i128, gcd: u128 },

    #[error("moduli {a} and {b} are not coprime")]
    ModuliNotCoprime { a: u64, b: u64 },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("q = md - nc = {0} is not positive")]
    NonPositiveQ(i128),

    #[error("sign must be +1 or -1, got {0}")]
    BadEps(i64),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("range violated: {0}")]
    RangeViolated(String),

    #[error("{0} is not square-free")]
    NotSquareFree(u64),

    #[error("prime {p} is ineligible: {reason}")]
    IneligiblePrime { p: u64, reason: String },

    #[error("prime {0} listed more than once")]
    DuplicatePrime(u64),

    #[error("value out of supported range: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
