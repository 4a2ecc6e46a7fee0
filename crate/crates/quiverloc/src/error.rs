//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by constructors, parsers and verification entry points.
///
/// `Input`, `Syntax` and `Budget` classify bad input (CLI exit code 2);
/// `Composition` and `FineViolation` report a failed partial operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Undeclared label, mismatched structure, or violated precondition.
    #[error("invalid input: {0}")]
    Input(String),

    /// Document text that does not follow the line-oriented format.
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    /// Two consecutive arrows or paths that do not compose.
    #[error("not composable at index {index}: {message}")]
    Composition { index: usize, message: String },

    /// A product required by the fine axioms is missing from the locality
    /// relation of the codomain semigroup.
    #[error("fine violation: pair ({left}, {right}) is not in the locality relation")]
    FineViolation { left: String, right: String },

    /// An enumeration request that exceeds the configured budget.
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl Error {
    pub fn input(message: impl Into<String>) -> Self {
        Error::Input(message.into())
    }

    pub fn budget(message: impl Into<String>) -> Self {
        Error::Budget(message.into())
    }
}
