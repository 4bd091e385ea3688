use thiserror::Error;

/// Errors surfaced by the library. CLI maps these to stable exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A size guard refused the request (enumeration too large, horizon
    /// too long for the numeric mode, replica budget exceeded).
    #[error("resource guard: {0}")]
    ResourceGuard(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub(crate) fn guard(msg: impl Into<String>) -> Error {
    Error::ResourceGuard(msg.into())
}
