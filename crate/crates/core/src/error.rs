use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime different from 2 and 3")]
    InvalidPrime(u64),
    #[error("{0} does not split completely in Q(sqrt(-3), 2^(1/3))")]
    NotSplit(u64),
    #[error("coordinate denominator is divisible by {0}")]
    NonIntegral(u64),
    #[error("eta product has a fractional leading exponent")]
    NonIntegralWeight,
    #[error("precision {got} is below the floor {min}")]
    InsufficientPrecision { got: usize, min: usize },
    #[error("input vectors are linearly dependent")]
    NotABasis,
    #[error("model mismatch: {0}")]
    ModelMismatch(String),
    #[error("group closure exceeded {0} elements")]
    GroupTooLarge(usize),
    #[error("matrix does not preserve the canonical ideal: {0}")]
    NotAnAutomorphism(String),
    #[error("unexpected Groebner basis shape: {0}")]
    UnexpectedVariety(String),
    #[error("projective point has all coordinates zero")]
    ZeroPoint,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error("branch must be 0, 1 or 2, got {0}")]
    InvalidBranch(usize),
    #[error("i/o: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Bad input from the caller rather than a failed check.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InsufficientPrecision { .. } | Error::InvalidPrime(_) | Error::NotSplit(_) | Error::InvalidBranch(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
