use thiserror::Error;

use crate::poly::Polynomial;

/// Errors raised by the enumeration library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed composition {parts:?}: every part must be at least 1")]
    MalformedComposition { parts: Vec<usize> },

    #[error("malformed partition {parts:?}: parts must be positive and weakly decreasing")]
    MalformedPartition { parts: Vec<usize> },

    #[error("invalid card: {0}")]
    InvalidCard(String),

    #[error("argument `{name}` must be at least {min}, got {got}")]
    OutOfRange {
        name: &'static str,
        min: usize,
        got: usize,
    },

    #[error("label {0} is not a vertex of this matrix")]
    UnknownLabel(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("polynomial division is not exact, remainder {remainder}")]
    NotDivisible { remainder: Polynomial },

    /// An integer division that the mathematics guarantees to be exact was not.
    #[error("exactness violated in {context}")]
    Inexact { context: String },

    #[error("request exceeds feasibility bound: {what} (limit {limit}, requested {requested})")]
    Infeasible {
        what: &'static str,
        limit: usize,
        requested: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
