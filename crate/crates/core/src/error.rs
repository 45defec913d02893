use thiserror::Error;

/// Errors produced by the library.
///
/// `InvalidInput` marks arguments that violate a documented precondition;
/// `Unsupported` marks requests outside the implemented domain (callers
/// map these to distinct process exit codes); `Internal` marks failed
/// internal consistency checks.
#[derive(Debug, Error)]
pub enum RacahError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl RacahError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        RacahError::InvalidInput(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        RacahError::Unsupported(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        RacahError::Internal(msg.into())
    }
}
