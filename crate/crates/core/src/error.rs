use thiserror::Error;

/// Errors raised by the algebra kernel and the homological layers built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("modulus {0} is not an odd prime below 2^31")]
    BadModulus(u64),
    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("degree of the zero polynomial is undefined")]
    ZeroDegree,
    #[error("generator {index} is not homogeneous")]
    Inhomogeneous { index: usize },
    #[error("element {index} is not in the homogeneous maximal ideal")]
    NotInMaximalIdeal { index: usize },
    #[error("free module rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("homological index {index} outside computable window [{lo}, {hi}]")]
    Window { index: i64, lo: i64, hi: i64 },
    #[error("uncertified: {0}")]
    Uncertified(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
