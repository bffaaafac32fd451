use thiserror::Error;

/// Errors raised by the algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },

    #[error("invalid ring signature: {0}")]
    InvalidSignature(String),

    #[error("degree of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("polynomial `{0}` is not weighted-homogeneous")]
    NotHomogeneous(String),

    #[error("step budget of {limit} reduction steps exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("empty spectrum: the ideal contains 1")]
    EmptySpectrum,

    #[error("assumption violation: {0}")]
    AssumptionViolation(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("variable-name collision: {0}")]
    NameCollision(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
