use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("out of domain: {0}")]
    OutOfDomain(String),
    #[error("near singularity: {0}")]
    NearSingularity(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("degenerate recurrence: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
