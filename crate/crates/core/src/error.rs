//! Error type shared across the crate.

/// Errors produced by library operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The evaluation budget is already spent; the run must stop.
    #[error("evaluation budget exhausted ({used}/{budget} evaluations)")]
    BudgetExhausted { used: u64, budget: u64 },

    /// A results grid is missing one (function, operator) cell.
    #[error("missing cell in results grid: {function}/{operator}")]
    MissingCell { function: String, operator: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
