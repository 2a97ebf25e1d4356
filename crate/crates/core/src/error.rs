use thiserror::Error;

/// Errors raised by library operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition on the arguments was violated.
    #[error("usage error: {0}")]
    Usage(String),
    /// Malformed graph, partition or vector text.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// The instance is beyond a configured size cap.
    #[error("resource limit: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
