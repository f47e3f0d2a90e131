use thiserror::Error;

use crate::algebra::Algebra;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("beta = {0} is not the dimension of a real normed division algebra (expected 1, 2, 4 or 8)")]
    InvalidBeta(u32),

    #[error("algebra mismatch: {0} vs {1}")]
    AlgebraMismatch(Algebra, Algebra),

    #[error("conjectural octonion case: matrix-level operations are not available for beta = 8")]
    ConjecturalOctonion,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive definite: pivot {index} = {pivot:e}")]
    NotPositiveDefinite { index: usize, pivot: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),
}

impl Error {
    /// True for errors caused by bad distribution parameters or domain
    /// violations, as opposed to malformed input shapes.
    pub fn is_parameter_error(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::Parameter(_) | Error::ConjecturalOctonion)
    }
}
