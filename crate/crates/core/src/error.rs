use std::io;

use thiserror::Error;

/// Errors produced by trajectory generation, the sequential test and the
/// supporting analyses.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown system '{name}' (valid names: {valid})")]
    UnknownSystem { name: String, valid: String },

    /// A non-finite state appeared while generating a trajectory.
    #[error("trajectory diverged: non-finite state at grid index {index}")]
    Divergence { index: usize },

    #[error("trajectory of {requested} samples exceeds the storage cap of {cap}")]
    CapacityExceeded { requested: usize, cap: usize },

    #[error("malformed trajectory data: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for errors caused by bad caller input rather than by the
    /// numerics or the environment.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. }
                | Error::IndexOutOfRange { .. }
                | Error::InvalidInput(_)
                | Error::UnknownSystem { .. }
                | Error::CapacityExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
