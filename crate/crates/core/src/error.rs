use thiserror::Error;

use crate::presheaf::Violation;

/// Errors raised by the combinatorial kernels.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{kind} index out of range: {detail}")]
    Range { kind: &'static str, detail: String },

    #[error("cannot compose: {0}")]
    Composition(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("presheaves are incompatible: {0}")]
    Mismatch(String),

    #[error("truncation too small: {0}")]
    Truncation(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("presheaf violates {} identit{}; first: {}", .0.len(), if .0.len() == 1 { "y" } else { "ies" }, .0.first().map(|v| v.to_string()).unwrap_or_default())]
    Validation(Vec<Violation>),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { location: location.into(), message: message.into() }
    }
}
