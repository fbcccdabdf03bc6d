use thiserror::Error;

/// Error with a process exit category.
///
/// Exit codes: 0 success, 2 parse, 3 validation, 4 internal math inconsistency.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("math inconsistency: {0}")]
    Math(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Error {
        Error::Parse(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Error {
        Error::Validation(msg.into())
    }

    pub fn math(msg: impl Into<String>) -> Error {
        Error::Math(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Validation(_) | Error::Io(_) => 3,
            Error::Math(_) => 4,
        }
    }
}
