use thiserror::Error as ThisError;

/// Errors raised by the exact and numeric kernels.
#[derive(Debug, Clone, PartialEq, ThisError)]
pub enum Error {
    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not coprime to {1}")]
    NotCoprime(i64, u64),
    #[error("class function moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("Hurwitz zeta has a pole at s = 1")]
    PoleAtOne,
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("character and l = {l} have opposite parity; L(chi, 1 - l) vanishes")]
    ParityMismatch { l: u32 },
    #[error("numeric and exact values disagree: {0}")]
    PrecisionFailure(String),
    #[error("element is not invertible: {0}")]
    NonInvertible(String),
    #[error("derivation step failed: {0}")]
    SymbolicMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
