use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("matrix is not of finite order: {0}")]
    NotTorsion(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("unsupported rank g'' = {0} (only 1 and 2 are supported)")]
    UnsupportedRank(usize),
    #[error("unsupported cone dimension {0} (at most 3)")]
    UnsupportedDimension(usize),
    #[error("window too small: no interior cone survives")]
    EmptyFan,
    #[error("divisor class is not effective: {0}")]
    NotEffective(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("value unknown: {0}")]
    Unknown(String),
    #[error("not a cusp form: vanishing order is 0")]
    NotCuspForm,
    #[error("rule chain cannot decide: {0}")]
    Undecidable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
