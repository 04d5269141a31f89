use thiserror::Error;

/// Failures raised by the engine. Each variant carries a located message.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("set mismatch: {0}")]
    SetMismatch(String),
    #[error("square does not commute: {0}")]
    NonCommuting(String),
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("ill-typed: {0}")]
    IllTyped(String),
    #[error("degree out of range: {0}")]
    Degree(String),
    #[error("invalid simplicial list: {0}")]
    Invalid(String),
    #[error("not operadic: {0}")]
    NotOperadic(String),
    #[error("missing inner filler: {0}")]
    MissingFiller(String),
    #[error("non-unique inner filler: {0}")]
    NonUniqueFiller(String),
    #[error("subobject not closed: {0}")]
    NotClosed(String),
    #[error("{0}")]
    Parse(String),
    #[error("identity failure: {0}")]
    Identity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
