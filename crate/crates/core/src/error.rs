use thiserror::Error;

/// Errors raised by set, symmetrization and schedule operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("representation mismatch: {0}")]
    RepresentationMismatch(String),
    #[error("grid spacing mismatch: {0} vs {1}")]
    SpacingMismatch(String, String),
    #[error("subspace must be axis-aligned for {0}")]
    NotAxisAligned(&'static str),
    #[error("invalid subspace: {0}")]
    InvalidSubspace(String),
    #[error("invalid scale factor: {0}")]
    InvalidScale(String),
    #[error("empty set")]
    EmptySet,
    #[error("zero direction")]
    ZeroDirection,
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("arithmetic overflow in exact scalar")]
    Overflow,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;
