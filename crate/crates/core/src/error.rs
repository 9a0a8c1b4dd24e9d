use thiserror::Error;

/// Errors raised by operator construction, certification and diagram handling.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension {requested} exceeds the configured cap {cap}")]
    DimensionCap { requested: usize, cap: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid subsystem selection: {0}")]
    Subsystems(String),

    #[error("operator is not Hermitian (deviation {deviation:e} > tolerance {tolerance:e})")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("invalid partition: {0}")]
    Partition(String),

    #[error("invalid permutation: {0}")]
    Permutation(String),

    #[error("row cap violated: {rows} rows exceed local dimension {dim}")]
    RowCap { rows: usize, dim: usize },

    #[error("invalid diagram: {0}")]
    Diagram(String),

    #[error("generator index {index} out of range: {reason}")]
    GeneratorIndex { index: usize, reason: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unsupported instance: {0}")]
    Unsupported(String),

    #[error("eigensolver did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
