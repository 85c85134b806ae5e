use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: negative edge weight {weight}")]
    NegativeWeight { line: usize, weight: f64 },

    #[error("line {line}: node index {index} outside the declared range of {n} nodes")]
    IndexOutOfRange { line: usize, index: i64, n: usize },

    #[error("unsupported Matrix Market header: {0}")]
    UnsupportedFormat(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("input contains no nodes")]
    EmptyInput,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix dimension {dim} exceeds the dense limit {limit}")]
    TooLarge { dim: usize, limit: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::NegativeWeight { .. }
            | Error::IndexOutOfRange { .. }
            | Error::UnsupportedFormat(_)
            | Error::DimensionMismatch(_)
            | Error::EmptyInput
            | Error::Io(_) => 1,
            Error::InvalidParameter(_) | Error::TooLarge { .. } => 2,
            Error::Numerical(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
