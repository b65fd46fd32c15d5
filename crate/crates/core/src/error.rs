use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum PlgError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl PlgError {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        PlgError::Input(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        PlgError::Parse {
            line,
            message: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, PlgError>;
