use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}: minimum is {min}")]
    InvalidRank {
        family: char,
        rank: usize,
        min: usize,
    },

    #[error("vector {0:?} is not a root of this system")]
    NotARoot(Vec<i64>),

    #[error("{0}")]
    Domain(String),

    #[error("degree vector is not in the cone: {0}")]
    ConeMembership(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("linear program infeasible: {0}")]
    LpInfeasible(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
