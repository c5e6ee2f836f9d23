use thiserror::Error;

/// Everything that can go wrong while building or evaluating a counting problem.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("dimension mismatch: {condition} requires total codimension {expected}, got {actual}")]
    DimensionMismatch {
        condition: &'static str,
        expected: i64,
        actual: i64,
    },

    #[error("no RT fixture for key `{0}`")]
    MissingFixture(String),

    #[error("inconsistent result: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cache `{path}` is locked by another process")]
    CacheLocked { path: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
