//! Exact linear algebra over the rationals or a prime field.

mod field;
mod matrix;

pub use field::{Field, FieldElem, MAX_PRIME};
pub use matrix::{Matrix, Rref};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("linear system has no solution")]
    NoSolution,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("bad field: {0}")]
    BadField(String),
    #[error("parse error: {0}")]
    Parse(String),
}
