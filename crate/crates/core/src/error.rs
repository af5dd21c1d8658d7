use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LcpError {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid CSR structure: {0}")]
    InvalidStructure(String),

    #[error("singular matrix: zero pivot at row {row}")]
    Singular { row: usize },

    #[error("matrix is not lower triangular: entry ({row}, {col}) above the diagonal")]
    NotLowerTriangular { row: usize, col: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("iteration diverged at step {iteration}")]
    Divergence { iteration: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for LcpError {
    fn from(e: std::io::Error) -> Self {
        LcpError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, LcpError>;
