//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A point lies outside the domain of the space or weight family.
    #[error("point outside domain: {0}")]
    Domain(String),

    /// A weight or Köthe level index is out of range.
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    /// A weight evaluated to zero or a non-positive value where positivity is required.
    #[error("degenerate weight: {0}")]
    DegenerateWeight(String),

    /// β-duality is not defined for this (p-norm, limit) combination.
    #[error("unsupported pairing: {0}")]
    UnsupportedPairing(String),

    /// Truncation degree exceeds the factorial overflow guard.
    #[error("degree {0} exceeds the supported maximum {1}")]
    DegreeOverflow(usize, usize),

    /// Matrix is (numerically) rank deficient; the frame property fails at truncation.
    #[error("rank deficient: {0}")]
    RankDeficient(String),

    /// Not enough data points survive filtering to perform a fit.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// An exponential argument would overflow double precision.
    #[error("range overflow: {0}")]
    RangeOverflow(String),

    /// Generic argument validation failure.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
