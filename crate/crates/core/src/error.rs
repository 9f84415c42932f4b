use thiserror::Error;

/// Errors raised by the toric library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero vector cannot be oriented")]
    ZeroVector,
    #[error("configuration is not pointed (no positive grading exists)")]
    NotPointed,
    #[error("matrix has a negative entry")]
    NegativeEntries,
    #[error("guard violated: {0}")]
    GuardViolated(String),
    #[error("resource limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("weight vector is not generic: {0}")]
    NonGenericOmega(String),
    #[error("vector is not a circuit of the configuration")]
    NotACircuit,
    #[error("integer value does not fit the machine exponent type")]
    Overflow,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
