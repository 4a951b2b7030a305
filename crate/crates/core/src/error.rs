use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ground set size {0} outside 1..=12")]
    GroundSetSize(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("matrix is not symmetric positive definite")]
    NotPositiveDefinite,
    #[error("scale must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("rank function value at the empty set must be 0")]
    NonzeroEmptySet,
    #[error("bad rational literal `{0}`")]
    BadRational(String),
    #[error("json: {0}")]
    Json(String),
    #[error("index {index} out of range 1..={n} at {line}:{column}")]
    IndexOutOfRangeAt {
        index: usize,
        n: usize,
        line: usize,
        column: usize,
    },
    #[error("entropy and determinant atoms mixed at {line}:{column}")]
    MixedAtoms { line: usize, column: usize },
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
