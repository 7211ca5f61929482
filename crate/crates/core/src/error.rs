use thiserror::Error;

/// Errors raised by the analytic and sampling layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical invariant that the geometry guarantees was violated.
    ///
    /// This indicates a case-dispatch or bracketing bug rather than bad input.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn inconsistency(msg: impl Into<String>) -> Error {
    Error::InternalInconsistency(msg.into())
}
