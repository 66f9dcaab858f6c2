//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero in Q(q,t)")]
    DivisionByZero,

    #[error("denominator vanishes under the substitution {0}")]
    VanishingDenominator(String),

    #[error("operator action produced degree {got}, expected {expected}")]
    DegreeMismatch { expected: i64, got: i64 },

    #[error("operator window exceeded: needed source degree {needed}, window is {window}")]
    WindowExceeded { needed: i64, window: i64 },

    #[error("operator windows are incompatible (empty result window)")]
    EmptyWindow,

    #[error("operator shifts differ: {0} vs {1}")]
    ShiftMismatch(i64, i64),

    #[error("not a partition: {0}")]
    BadPartition(String),

    #[error("path is not admissible for the given index sequence: {0}")]
    BadPath(String),

    #[error("sequence is outside the domain of the particle reparametrization: {0}")]
    PsiDomain(String),

    #[error("weight denominator vanishes at cell ({row},{col})")]
    ZeroWeightCell { row: u32, col: u32 },

    #[error("eigenspace at degree {degree} for {lambda} has dimension {dim}, expected 1")]
    EigenspaceDimension { degree: u32, lambda: String, dim: usize },

    #[error("Pieri expansion of {mu} has support outside one-cell additions: {lambda}")]
    PieriSupport { mu: String, lambda: String },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed JSON input: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
