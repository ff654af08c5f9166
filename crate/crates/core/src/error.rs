//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The input violates a precondition (bad field, mismatched dimensions, …).
    #[error("domain error: {0}")]
    Domain(String),
    /// A computation would exceed a configured resource cap.
    #[error("cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded { what: String, needed: u128, cap: u128 },
    /// A polynomial could not be parsed.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Error {
        Error::Domain(msg.into())
    }

    pub fn cap(what: impl Into<String>, needed: u128, cap: u128) -> Error {
        Error::CapExceeded { what: what.into(), needed, cap }
    }

    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
