use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent user input (group specs, permutations, simplices).
    #[error("invalid input: {0}")]
    Input(String),

    /// A configured size cap was exceeded.
    #[error("{what} exceeds the configured cap ({limit})")]
    Size { what: String, limit: usize },

    /// Two operands do not live over the same group and degree.
    #[error("context mismatch: {0}")]
    Mismatch(String),

    /// An internal consistency check failed. This always indicates a bug.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
