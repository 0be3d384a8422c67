use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A parameter violates a primality, parity or coprimality requirement.
    #[error("parameter error: {0}")]
    Param(String),

    /// A matrix entry would sit on a pole of the trigonometric function.
    #[error("domain error: {0}")]
    Domain(String),

    /// An enclosure was too wide to decide the requested question.
    #[error("undecided: {0}")]
    Undecided(String),

    /// Exact arithmetic was requested beyond the configured work budget.
    #[error("exact-mode budget exceeded: {0}")]
    Budget(String),

    /// An internal consistency check failed; the computation must not be trusted.
    #[error("internal error: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Network access failed and no cached copy was available.
    #[error("network/cache error: {0}")]
    Network(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Param(msg.into()))
}
