use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid bit string {text:?}: {reason}")]
    InvalidBitString { text: String, reason: String },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid arity {0}: need at least one qubit")]
    InvalidArity(usize),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("size {size} exceeds the bound of {bound} for {what}")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("outcome spaces differ: {left} vs {right}")]
    SpaceMismatch { left: String, right: String },

    #[error("transcript verdict {stored} does not match recomputed verdict {recomputed}")]
    VerdictMismatch { stored: String, recomputed: String },

    #[error("unsupported protocol shape: {0}")]
    UnsupportedShape(String),

    #[error("classicality certificate failed: {0}")]
    CertificateFailed(String),
}
