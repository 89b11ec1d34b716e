use thiserror::Error;

/// Errors raised by the algebra engine.
///
/// The variants line up with the harness exit codes: parse and precondition
/// problems are input errors, `Hypothesis` is a violated scenario hypothesis,
/// `ResourceLimit` means the instance is too large for the configured ceilings.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("exactness failure (engine bug): {0}")]
    Exactness(String),
    #[error("exact division failed: {0}")]
    DivisionFailed(String),
    #[error("quotient is not finite-dimensional: {0}")]
    Unbounded(String),
    #[error("declared primes do not cover the support: {0}")]
    Coverage(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

impl AlgebraError {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        AlgebraError::Precondition(msg.into())
    }

    pub(crate) fn hypothesis(msg: impl Into<String>) -> Self {
        AlgebraError::Hypothesis(msg.into())
    }
}
