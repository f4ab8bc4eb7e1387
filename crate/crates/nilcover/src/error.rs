use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad input: malformed partition, wrong parity, unsupported group, ...
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A lookup key that is not in the curated data.
    #[error("not found: {0}")]
    NotFound(String),

    /// An internal consistency check failed. This indicates a bug or a data error.
    #[error("internal check failed: {0}")]
    Internal(String),

    #[error("data file {path}: {message}")]
    Data { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Self::Invalid(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Self::Internal(msg.into())
    }

    /// True for failures that stem from user input rather than from the library.
    pub fn is_validation(&self) -> bool {
        matches!(self, Self::Invalid(_) | Self::NotFound(_))
    }
}
