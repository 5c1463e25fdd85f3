use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a partition: {0}")]
    NotAPartition(String),

    #[error("{inner} is not contained in {outer}")]
    NotContained { inner: String, outer: String },

    #[error("malformed tableau: {0}")]
    MalformedTableau(String),

    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("polynomial is not invariant under a uniform shift of the y variables")]
    NotShiftInvariant,

    #[error("internal error: {0}")]
    Internal(String),
}
