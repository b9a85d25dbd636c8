use thiserror::Error;

use crate::array::ValidationReport;
use crate::field::FieldError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("malformed parameter array: {0}")]
    Structure(String),
    #[error("invalid parameter array: {0}")]
    Invalid(ValidationReport),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("eigenvalue {eigenvalue} has a {dimension}-dimensional eigenspace")]
    Eigenspace { eigenvalue: String, dimension: usize },
    #[error("eigenvalue {0} is repeated")]
    RepeatedEigenvalue(String),
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("entry ({row}, {col}) = {value} lies outside the tridiagonal band")]
    NotTridiagonal { row: usize, col: usize, value: String },
    #[error("identity check failed: {0}")]
    Violation(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
