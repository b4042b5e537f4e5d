//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A basis label or vector length does not fit the space.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// An operation required a normalized state but got one with squared
    /// norm off by more than the representation tolerance.
    #[error("normalization error: squared norm is {0}, expected 1")]
    NotNormalized(f64),

    /// An operation required a Hermitian operator.
    #[error("operator is not hermitian: max |M - M\u{2020}| entry is {0:.3e}")]
    NotHermitian(f64),

    /// A bipartition does not fit the space it is used with.
    #[error("invalid bipartition: {0}")]
    Bipartition(String),

    /// Spanning vectors were linearly dependent at the working tolerance.
    #[error("rank deficiency: {0}")]
    RankDeficient(String),

    /// An operation was called on input violating its contract.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A precondition documented for the operation does not hold.
    #[error("precondition not met: {0}")]
    Precondition(String),

    /// Forced measurement outcome has (numerically) zero probability.
    #[error("zero-probability outcome {index}: p = {probability:.3e}")]
    ZeroProbability { index: usize, probability: f64 },

    /// Unknown fixture identifier.
    #[error("unknown fixture id: {0}")]
    UnknownFixture(String),

    /// Problem-file parsing or validation failure, with label context where
    /// available.
    #[error("problem file error: {0}")]
    ProblemFile(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
