use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("both polynomials are zero")]
    BothZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("carry would move past column {0}")]
    CarryOverflow(usize),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("parameters out of domain: {0}")]
    OutOfDomain(String),
    #[error("dominance condition violated at c = {0}")]
    DominanceViolated(usize),
    #[error("column condition violated: {0}")]
    ConditionViolated(String),
    #[error("the zero polynomial has no dope matrix")]
    ZeroPolynomial,
    #[error("matrix is not safe")]
    NotSafe,
    #[error("matrix is not saturated")]
    NotSaturated,
    #[error("matrix is not {0}-limited")]
    NotLimited(usize),
    #[error("retries exhausted after {0} attempts")]
    RetriesExhausted(usize),
    #[error("census table is incomplete for n = {0}")]
    IncompleteTable(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
