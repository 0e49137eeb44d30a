use thiserror::Error;

/// Errors raised by the exact machinery.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("extension mismatch: {0}")]
    ExtensionMismatch(String),

    #[error("invalid extension: {0}")]
    InvalidExtension(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precision cap of {cap} bits exceeded: {context}")]
    PrecisionCap { cap: u64, context: String },

    #[error("unbounded polyhedron: {0}")]
    Unbounded(String),

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
