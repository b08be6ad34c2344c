use thiserror::Error;

use crate::manifold::Kind;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid contraction moduli: {0}")]
    InvalidModuli(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operation not supported on a {kind:?} manifold: {context}")]
    UnsupportedKind { kind: Kind, context: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("classification error: {0}")]
    Classification(String),

    #[error("model inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
