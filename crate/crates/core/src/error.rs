use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("factorization is undefined at n = 0")]
    ZeroIndex,
    #[error("index of multi-index {0} overflows u64")]
    IndexOverflow(String),
    #[error("prime sieve limit {requested} exceeds the configured cap {cap}")]
    SieveCap { requested: u64, cap: u64 },
    #[error("coefficient vector has {got} entries, space dimension is {expected}")]
    DimMismatch { expected: usize, got: usize },
    #[error("coefficient spaces differ")]
    SpaceMismatch,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no closed form: {0}")]
    NoClosedForm(String),
    #[error("lift width {width} exceeds the dimension cap {cap}")]
    DimensionCap { width: usize, cap: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("estimator inconsistency: {0}")]
    Inconsistent(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
