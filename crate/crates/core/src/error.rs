use thiserror::Error;

/// Errors raised by the library.
///
/// `InvariantViolation` is reserved for outcomes that would falsify one of the
/// verified theorems. Everything else is a caller or resource problem.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("construction infeasible: {0}")]
    ConstructionInfeasible(String),
    #[error("hypothesis not satisfied: {0}")]
    HypothesisNotSatisfied(String),
    #[error("not critical: {0}")]
    NotCritical(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::InvariantViolation(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => { $crate::error::Error::InvalidArgument(format!($($arg)*)) };
}

macro_rules! violation {
    ($($arg:tt)*) => { $crate::error::Error::InvariantViolation(format!($($arg)*)) };
}

pub(crate) use invalid;
pub(crate) use violation;
