//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("k must be at least 1, got {0}")]
    InvalidK(u64),

    #[error("enumeration of {required} items exceeds the guardrail of {limit}")]
    GuardrailExceeded { required: u128, limit: u64 },

    #[error("input vectors are linearly dependent")]
    DependentVectors,

    #[error("subspace is not selfsufficient")]
    NotSelfsufficient,

    #[error("relative predimension formulas disagree: min formula {min_scaled}, closed formula {closed_scaled}")]
    DeltaRelDisagreement { min_scaled: i64, closed_scaled: i64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown lemma id: {0}")]
    UnknownLemma(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
