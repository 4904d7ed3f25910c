use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid superspace C^{{{m}|{n}}}: need m + n >= 1")]
    EmptySpace { m: usize, n: usize },

    #[error("basis index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("operation requires a Q(n) context (m = n), got m = {m}, n = {n}")]
    NotQueer { m: usize, n: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition of weight {weight} does not fit into {factors} tensor factors")]
    PartitionTooLarge { weight: usize, factors: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("monomial is not canonical: {0}")]
    NonCanonicalMonomial(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}
