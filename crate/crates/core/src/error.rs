use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("index {index} out of range for a {dim}-simplex")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("invalid simplicial set at {location}: {reason}")]
    InvalidSet { location: String, reason: String },
    #[error("not a subcomplex: {0}")]
    NotSubcomplex(String),
    #[error("{what} needs dimension {needed} but data is truncated at {available}")]
    Truncated {
        what: String,
        needed: usize,
        available: usize,
    },
    #[error("search budget of {0} steps exceeded")]
    BudgetExceeded(u64),
    #[error("invalid group data: {0}")]
    InvalidGroup(String),
    #[error("not reduced: {0}")]
    NotReduced(String),
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("not a covering: {0}")]
    NotCovering(String),
    #[error("invalid category data: {0}")]
    InvalidCategory(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
}

pub(crate) fn invalid(location: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::InvalidSet {
        location: location.into(),
        reason: reason.into(),
    }
}
