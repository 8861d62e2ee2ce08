use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element {0} does not belong to the set")]
    NotAMember(String),
    #[error("set is not elementary: {0}")]
    NotElementary(String),
    #[error("projection dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("malformed element encoding: {0}")]
    Json(String),
    #[error("signed sizes differ: {0} vs {1}")]
    SizeMismatch(i64, i64),
    #[error("sijection is not normal at {0}")]
    NotNormal(String),
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
    #[error("middle sets of a composition differ: {0} vs {1}")]
    MiddleMismatch(String, String),
}
