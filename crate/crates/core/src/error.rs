//! Error type shared across the library.

use std::fmt;

/// Errors produced by library operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument violated a precondition (bad range, empty list, zero part, ...).
    InvalidInput(String),
    /// An analytic evaluation was requested outside its convergence region.
    Domain(String),
    /// An exact linear solve hit a singular matrix; carries the rank found.
    Singular { rank: usize },
    /// An internal cross-check failed (e.g. a closed form produced a non-integer).
    Consistency(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Singular { rank } => write!(f, "singular system (rank {rank})"),
            Error::Consistency(msg) => write!(f, "consistency failure: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
