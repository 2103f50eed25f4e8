use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Enumeration stopped at `checked` items out of `required` without
    /// reaching a conclusive answer.
    #[error("enumeration budget exceeded: {required} items required, budget {budget}, {checked} checked without a conclusive result")]
    BudgetExceeded {
        required: u128,
        budget: u64,
        checked: u64,
    },

    #[error("candidate set contains a duplicate constraint at position {index}")]
    DuplicateCandidate { index: usize },

    #[error("did not converge: {0}")]
    NonConvergence(String),

    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),

    #[error("decision cannot be produced by this algorithm: {0}")]
    UnreachableDecision(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
