//! Error types.
//!
//! Two kinds of failure are kept apart everywhere: *input errors* (malformed
//! documents, dimension mismatches, bad rationals) and *mathematical
//! failures* (validation of toric data fails, a specialization is not
//! generic, an evaluation point collides with a pole). A failed identity
//! check is neither: it is a reported result, not an `Err`.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: bad JSON values, dimension mismatches, non-integer data.
    #[error("input error: {0}")]
    Input(String),

    /// Smoothness validation failed; the report names the violation.
    #[error("toric data validation failed: {0}")]
    Validation(String),

    /// A degree functional or cutoff precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A chosen specialization of the equivariant parameters is not generic.
    #[error("specialization not generic: {0}")]
    Degenerate(String),

    /// Evaluation of a rational function at a point where it has a pole.
    #[error("pole collision: {0}")]
    PoleCollision(String),

    /// Internal invariant broken (a bug, not a user error).
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    pub fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }
    pub fn pole_collision(msg: impl Into<String>) -> Self {
        Error::PoleCollision(msg.into())
    }
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
