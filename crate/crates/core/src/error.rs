//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FcaError {
    /// A set or measure was built for one universe and used against another.
    #[error("dimension mismatch: expected universe of size {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An exhaustive enumeration would exceed its configured cap. Callers can
    /// either raise the cap or report the check as inconclusive.
    #[error("{operation}: {quantity} is {actual}, exceeding the cap of {cap}")]
    CapExceeded {
        operation: &'static str,
        quantity: &'static str,
        actual: usize,
        cap: usize,
    },

    /// Malformed or inconsistent input (bad labels, invalid relations,
    /// weights that do not form a measure, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A file or string in an external format could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// An underlying filesystem or stream failure.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl FcaError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        FcaError::Invalid(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        FcaError::Parse(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, FcaError>;
