//! Errors carrying the process exit code.

use std::fmt;
use std::process::ExitCode;

use elastinet::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Code {
    /// Unreadable or malformed input, bad flags or configuration.
    Input = 2,
    /// Input parsed but violates the network constraints or a precondition.
    Validation = 3,
    /// The minimizer stopped without converging.
    Optimization = 4,
}

#[derive(Debug)]
pub struct Failure {
    pub code: Code,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn new(code: Code, error: impl Into<anyhow::Error>) -> Self {
        Self {
            code,
            error: error.into(),
        }
    }

    pub fn input(message: impl fmt::Display) -> Self {
        Self::new(Code::Input, anyhow::anyhow!("{message}"))
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code as u8)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidConfig(_) => Code::Input,
            _ => Code::Validation,
        };
        Self::new(code, e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::new(Code::Input, e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

pub type Outcome<T = ()> = std::result::Result<T, Failure>;
