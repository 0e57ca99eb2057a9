use std::path::PathBuf;

use thiserror::Error;

/// Errors raised across the laboratory.
#[derive(Debug, Error)]
pub enum Error {
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed snapshot: {0}")]
    Snapshot(String),

    #[error("config error at line {line}: key `{key}`: {message}")]
    Config {
        key: String,
        line: usize,
        message: String,
    },

    #[error("quadrature did not converge for {what}: estimated error {error:e} > tolerance {tolerance:e}")]
    Quadrature {
        what: String,
        error: f64,
        tolerance: f64,
    },

    #[error("numerical abort at t = {time} (step {step}): {reason}")]
    NumericalAbort {
        time: f64,
        step: usize,
        reason: String,
        last_good: Option<PathBuf>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn config(key: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            line,
            message: message.into(),
        }
    }
}
