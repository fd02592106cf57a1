use thiserror::Error;

/// Errors raised across the library.
///
/// Every variant maps to CLI exit code 2 (usage or domain error); verification
/// outcomes are reported through verdicts, not errors.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A documented precondition does not hold, e.g. `requires a > k_1 + (m-1)/2`.
    #[error("{0}")]
    Domain(String),
    #[error("partitions of unequal weight {0} and {1} are not comparable")]
    UnequalWeight(usize, usize),
    #[error("malformed partition {0:?}: {1}")]
    BadPartition(String, String),
    #[error("partition ({0}) is not in the zonal table (max degree {1})")]
    MissingPartition(String, usize),
    #[error("matrix is not symmetric: |a[{0}][{1}] - a[{1}][{0}]| = {2:e}")]
    NotSymmetric(usize, usize, f64),
    #[error("matrix is not positive definite (pivot {0} = {1:e})")]
    NotPositiveDefinite(usize, f64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("malformed matrix: {0}")]
    BadMatrix(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("zero denominator: {0}")]
    ZeroDenominator(String),
    #[error("{0}")]
    Internal(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
