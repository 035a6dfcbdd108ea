use thiserror::Error;

use crate::field::FieldError;
use crate::matrix::MatrixError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("cannot parse class label {0:?}")]
    LabelParse(String),
    #[error("{label} is not a conjugacy class of SL(2,{q})")]
    UnknownLabel { label: String, q: u32 },
    #[error("check {check} does not apply to q = {q}")]
    NotApplicable { check: &'static str, q: u32 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
