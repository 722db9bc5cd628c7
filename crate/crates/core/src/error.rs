use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("inadmissible input: {0}")]
    Admissibility(String),
    #[error("divergent series: {0}")]
    Divergence(String),
    #[error("singular series: {0}")]
    Singular(String),
    #[error("unsupported request: {0}")]
    Unsupported(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("unknown identity '{0}'")]
    UnknownIdentity(String),
    #[error("resource limit: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;
