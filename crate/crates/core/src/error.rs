//! Error types shared across the crate.

use thiserror::Error;

/// Parse failure with a byte position into the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("zero raised to a negative power")]
    ZeroToNegativePower,

    #[error("substitution produced an identically zero denominator")]
    SubstitutionZeroDenominator,

    #[error("derivative order overflow: expression already uses order {limit}")]
    OrderOverflow { limit: u32 },

    #[error("invalid ODE: {0}")]
    InvalidOde(String),

    #[error("order k = {k} out of range: k >= {min} required")]
    OrderTooSmall { k: u32, min: u32 },

    #[error("coefficient vector is for k = {coeff_k}, equation order is k = {k}")]
    CoefficientMismatch { coeff_k: u32, k: u32 },

    #[error("invalid phi term: {0}")]
    InvalidPhi(String),

    #[error("not a point vector field: {0}")]
    NotPointField(String),

    #[error("bracket does not close over the basis: {0}")]
    NotClosed(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
