use thiserror::Error;

/// Errors produced by the exact geometry layer.
///
/// "Singular" linear systems and empty intersections are values, not errors;
/// only genuine contract violations surface here.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("halfspace system is unbounded")]
    Unbounded,
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
