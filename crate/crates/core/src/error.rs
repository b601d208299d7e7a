use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: bad parameters, invalid edges, non-bijective images.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// The request is well-formed but exceeds a configured enumeration cap.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("edge space mismatch: (n={left_n}, r={left_r}) vs (n={right_n}, r={right_r})")]
    SpaceMismatch {
        left_n: usize,
        left_r: usize,
        right_n: usize,
        right_r: usize,
    },

    #[error("index {index} out of range for {count} items")]
    OutOfRange { index: usize, count: usize },

    #[error("permutation {0} is not an involution")]
    NotInvolution(String),

    #[error("degenerate construction: {0}")]
    Degenerate(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("duplicate family member {mask} at index {index}")]
    DuplicateMember { index: usize, mask: String },

    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
