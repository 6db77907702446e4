use thiserror::Error;

#[derive(Debug, Error)]
pub enum ForgeError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("matrix is not a Hadamard matrix")]
    NotHadamard,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("incompatible lattice scales {0} and {1}")]
    IncompatibleScales(String, String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, ForgeError>;
