use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("line bundle ({a},{b}) is not ample")]
    NotAmple { a: i64, b: i64 },

    #[error("invalid point class: {0}")]
    InvalidPoint(String),

    /// Sums or products of surds with distinct irrational radicands.
    #[error("cannot combine √{0} and √{1} without a field tower")]
    MixedRadicands(String, String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
