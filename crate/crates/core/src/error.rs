use thiserror::Error;

/// Every failure the library reports.
///
/// The CLI maps [`Error::Io`] and [`Error::Network`] to exit code 3 and the
/// argument-shaped variants to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("invalid arc set: {0}")]
    InvalidArcSet(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("unsupported ground set: {0}")]
    UnsupportedGround(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("refusing to enumerate a group of order about {estimate} (limit {limit})")]
    ScaleGuard { estimate: u128, limit: u128 },
    #[error("io error: {0}")]
    Io(String),
    #[error("network error: {0}")]
    Network(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
