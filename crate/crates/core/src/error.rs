use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Caller supplied data that violates an operation's precondition.
    #[error("invalid input: {0}")]
    Input(String),

    /// A PrefLib document could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A certified relation turned out cyclic. Sound rules never produce this,
    /// so seeing it means a bug in a reduction rule.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    /// The exhaustive oracle refuses elections above its size guard.
    #[error("oracle refuses n = {n}: exhaustive enumeration is limited to n <= {limit}")]
    OracleRefused { n: usize, limit: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
