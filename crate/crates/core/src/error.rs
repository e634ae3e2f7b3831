use thiserror::Error;

/// Errors raised by curve and network operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("no optimal rescaling: elastic energy or length vanishes")]
    NoOptimalRescale,

    #[error("singular angle: {0}")]
    SingularAngle(String),

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("construction failed: {0}")]
    ConstructionFailed(String),

    #[error("hypothesis not satisfied: {0}")]
    HypothesisFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}
