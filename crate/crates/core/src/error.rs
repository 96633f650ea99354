use thiserror::Error;

/// Errors raised by field construction, enumeration and the verification routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("{n} does not divide {of}")]
    NotDivisor { n: u64, of: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("coefficient vector is not a field element: {0}")]
    BadElement(String),
    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("enumeration cap exceeded: {needed} > {cap}")]
    CapExceeded { needed: String, cap: u64 },
    #[error("inexact division: {num} / {den}")]
    InexactDivision { num: String, den: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("subgroups are not scalar-equivalent")]
    Inequivalent,
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
