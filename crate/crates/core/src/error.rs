use thiserror::Error;

use crate::field::FieldError;
use crate::linalg::LinalgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("algebra mismatch: expected an element of dimension {expected}, got {got}")]
    Mismatch { expected: usize, got: usize },
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    #[error("cannot double an algebra of dimension {0}")]
    CannotDouble(usize),
    #[error("not invertible: norm is zero")]
    NotInvertible,
    #[error("element does not satisfy a degree-3 relation")]
    NotDegreeThree,
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("product is not commutative at basis pair ({0}, {1})")]
    NotCommutative(usize, usize),
    #[error("product is not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit vector is not a two-sided identity at basis element {0}")]
    BadUnit(usize),
    #[error("invalid structure-constant table: {0}")]
    InvalidTable(String),
    #[error("internal consistency violation: {0}")]
    Internal(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
