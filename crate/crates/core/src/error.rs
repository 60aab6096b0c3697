use thiserror::Error;

/// Errors surfaced by the library. `BudgetExceeded` is kept separate so
/// callers (and the CLI) can distinguish "search gave up" from a broken
/// precondition.
#[derive(Error, Debug)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("sequence not realizable: {0}")]
    NotRealizable(String),

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("compression failed: {0}")]
    CompressionFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code contract: 2 for invariant/contract violations,
    /// 3 for exhausted search budgets.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded(_) => 3,
            _ => 2,
        }
    }
}
