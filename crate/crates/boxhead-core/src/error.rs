use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller violated a documented precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("shape mismatch in {context}: expected {expected:?}, got {got:?}")]
    ShapeMismatch {
        context: &'static str,
        expected: Vec<usize>,
        got: Vec<usize>,
    },

    #[error("configuration error: {0}")]
    Config(String),

    /// A sanctioned numeric operation produced NaN or Inf.
    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("corrupt data: {0}")]
    Corrupt(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error("estimator error: {0}")]
    Estimator(String),

    /// Training aborted on a non-finite loss. Carries the last checkpoint
    /// that was written before the divergence, if any.
    #[error("non-finite loss at step {step} (last good checkpoint: {last_checkpoint:?})")]
    Diverged {
        step: u64,
        last_checkpoint: Option<PathBuf>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
