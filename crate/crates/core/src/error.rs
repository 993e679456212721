use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid parameters or inputs outside the complex.
    #[error("domain error: {0}")]
    Domain(String),

    /// A call whose documented precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Materialization would exceed the configured face budget.
    #[error("face budget exceeded at dimension {dim}: {required} faces needed, budget is {budget}")]
    Budget {
        dim: i64,
        required: String,
        budget: u64,
    },

    /// Two independent constructions of the same object disagreed.
    #[error("internal cross-check failed: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
