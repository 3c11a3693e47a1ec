use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected rank {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: usize, right: usize },

    #[error("invalid genus {0}: a closed surface of genus at least 1 is required")]
    InvalidGenus(usize),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is not symplectic")]
    NotSymplectic,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("move index {index} out of range for a factorization of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("schedule step {step}: {source}")]
    ScheduleStep {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("operation requires a closed factorization")]
    RequiresClosed,

    #[error("non-integral result: {0}")]
    NonIntegral(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("relation check failed: {0}")]
    RelationCheckFailed(String),

    #[error("invalid spin declaration: {0}")]
    InvalidSpin(String),

    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("inconsistent invariants: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}
