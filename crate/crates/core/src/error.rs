use thiserror::Error;

/// Errors produced by the workbench.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range (have {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("non-polynomial flow: Lie series did not terminate within {term_cap} terms")]
    NonPolynomialFlow { term_cap: usize },

    #[error("infinite intersection between curves {0} and {1}")]
    InfiniteIntersection(u64, u64),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("curve {0} has no generator coordinates")]
    MissingGeneratorCoords(u64),

    #[error("zero denominator: generator {0} does not occur in any word")]
    ZeroDenominator(usize),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),

    #[error("scale cap exceeded: {0}")]
    ScaleCapExceeded(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
