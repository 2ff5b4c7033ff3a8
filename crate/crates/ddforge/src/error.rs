//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("entry out of range at ({row},{col}): {value}")]
    EntryOutOfRange { row: usize, col: usize, value: i64 },
    #[error("matrix is not a (0,1)-matrix at ({row},{col}): {value}")]
    NotZeroOne { row: usize, col: usize, value: i64 },
    #[error("integer overflow in exact matrix arithmetic")]
    Overflow,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero in GF({q})")]
    DivisionByZero { q: u64 },
    #[error("discrete log of the zero element")]
    DlogOfZero,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("digraph is not regular: row {0} has a different sum")]
    NotRegular(usize),
    #[error("not a divisible design: {0}")]
    NotDivisibleDesign(String),
    #[error("scheme is not commutative")]
    NotCommutative,
    #[error("eigenvalue separation failed after {0} retries")]
    DegenerateSeparation(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("skew check requires an even group order, got {0}")]
    OddGroupOrder(u64),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
