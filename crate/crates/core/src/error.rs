//! Error type shared across the engine.
//!
//! Every fallible operation returns [`EngineError`]. Mismatched bases,
//! truncation-level violations, and search budget exhaustion are explicit
//! error variants rather than panics or silent degradation.

use thiserror::Error;

/// Errors surfaced by the presheaf engine and its audits.
#[derive(Debug, Error)]
pub enum EngineError {
    /// Two values that must live over the same index category do not.
    #[error("base category mismatch: {context} (expected `{expected}`, got `{got}`)")]
    BaseMismatch {
        context: String,
        expected: String,
        got: String,
    },

    /// An operation needs a finer truncation than the one supplied.
    #[error("truncation level too small for {op}: need at least {needed}, have {have}")]
    TruncationTooSmall {
        op: &'static str,
        needed: usize,
        have: usize,
    },

    /// A search or generation budget was exceeded. Never silently truncated.
    #[error("budget exceeded in {op}: {detail}")]
    BudgetExceeded { op: &'static str, detail: String },

    /// An object, morphism, or cell reference is out of range or unknown.
    #[error("invalid reference: {0}")]
    InvalidReference(String),

    /// Structured input (JSON or CLI argument) failed validation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A construction precondition does not hold (e.g. non-mono where one is required).
    #[error("precondition violated in {op}: {detail}")]
    Precondition { op: &'static str, detail: String },

    /// A named suite or string is not registered.
    #[error("unknown name: {0}")]
    UnknownName(String),

    /// A construction failed its own re-verification; indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, EngineError>;
