use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A search or enumeration hit its node limit before finishing.
    #[error("budget exceeded: {what} needs more than {limit} nodes")]
    BudgetExceeded { what: String, limit: u64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported dimension {0} (only 1, 2 and 3 are enumerated)")]
    UnsupportedDimension(usize),

    #[error("parity violation: period {period} and excess {excess} must have equal parity and |excess| <= period")]
    Parity { period: u64, excess: i64 },

    #[error("improper coloring: cells {a:?} and {b:?} share color {color}")]
    ImproperColoring { a: Vec<i64>, b: Vec<i64>, color: u8 },

    #[error("reducible polynomial: {0}")]
    Reducible(String),

    #[error("reducible matrix: the transition graph is not strongly connected")]
    ReducibleMatrix,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    /// Violation of an internal exactness invariant; always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn budget(what: impl Into<String>, limit: u64) -> Self {
        Error::BudgetExceeded { what: what.into(), limit }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
