//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input text could not be parsed; `pos` is a byte offset into the input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A ring specification was syntactically valid JSON but semantically bad.
    #[error("invalid ring spec: {0}")]
    InvalidRingSpec(String),

    /// Two values from different coefficient contexts were combined.
    #[error("operands belong to different coefficient contexts")]
    MixedContexts,

    /// An operation only defined for one kind of context was called on the other.
    #[error("operation requires a {expected} context")]
    WrongContext { expected: &'static str },

    #[error("division by zero")]
    DivisionByZero,

    /// A stated hypothesis of an operation does not hold for the input.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Twisted minimal central left multiples need gcrd(f, t) = 1.
    #[error(
        "precondition violated: twisted polynomial has zero constant term, so gcrd(f, t) != 1"
    )]
    ZeroConstantTerm,

    /// Something the theory guarantees failed to happen; always a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
