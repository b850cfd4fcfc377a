use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("catalog entry `{entry}` violates {invariant}")]
    Validation { entry: String, invariant: String },
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("element is not regular nilpotent")]
    NotRegularNilpotent,
    #[error("parameter is not regular: {0}")]
    NotRegular(String),
    #[error("chamber is not large")]
    NotLarge,
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("internal routes disagree: {0}")]
    Inconsistent(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("wrong triple adaptation: expected {0}")]
    Adaptation(String),
    #[error("involution is not of order two modulo the orders")]
    NotInvolutive,
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
