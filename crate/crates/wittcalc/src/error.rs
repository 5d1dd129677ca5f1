//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input violates a mathematical precondition or axiom.
    #[error("validation failed: {0}")]
    Validation(String),
    /// Input is malformed (wrong shape, unknown name, bad encoding).
    #[error("schema error: {0}")]
    Schema(String),
    /// A bounded search gave up before finding a witness.
    #[error("search bound exhausted: {0}")]
    BoundExhausted(String),
    /// An internal consistency check failed.
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn validation<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Validation(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
