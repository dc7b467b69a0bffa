use std::path::PathBuf;

use albert_core::error::AlgebraError;
use albert_core::field::FieldError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CtlError {
    #[error("config error at {pointer:?}: {message}")]
    Schema { pointer: String, message: String },
    #[error("{}: {message}", path.display())]
    Io { path: PathBuf, message: String },
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("evaluation error in {subterm:?}: {message}")]
    Eval { subterm: String, message: String },
    #[error("{0}")]
    Usage(String),
}
