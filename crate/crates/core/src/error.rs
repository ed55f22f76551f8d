use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// No complete MUB family (and therefore no operator set) is available
    /// for this dimension.
    #[error("unsupported dimension {dim}: {reason}")]
    UnsupportedDimension { dim: usize, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Input data violates a structural invariant (non-unitary basis,
    /// failed family check, malformed matrix, ...).
    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },

    #[error("cannot parse {path}: {message}")]
    Parse { path: String, message: String },
}

impl Error {
    pub(crate) fn mismatch(what: impl Into<String>) -> Self {
        Error::DimensionMismatch(what.into())
    }

    pub(crate) fn invalid(what: impl Into<String>) -> Self {
        Error::InvalidArgument(what.into())
    }
}
