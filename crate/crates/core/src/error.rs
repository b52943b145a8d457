use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input outside the domain of an operation (size caps, mismatched
    /// ground sets, non-Dyck words, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed textual input.
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// A vector left the truncated Fock space.
    #[error("truncation overflow: particle number {needed} exceeds cap {cap}")]
    Truncation { needed: usize, cap: usize },
    /// Two independently computed quantities disagreed.
    #[error("invariant violation: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
