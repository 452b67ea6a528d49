use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("sequence index must be at least 1, got {0}")]
    InvalidIndex(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("parameters out of domain: {0}")]
    ParamsOutOfDomain(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("unknown report format `{0}`")]
    UnknownFormat(String),
    #[error("witness failed its own check: {0}")]
    WitnessMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
