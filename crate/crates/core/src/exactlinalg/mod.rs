//! Exact dense linear algebra over Q(sqrt 2) and determinants of polynomial
//! matrices.

mod laplace;
mod modular;
mod polymatrix;
mod qmatrix;

use thiserror::Error;

pub use laplace::{memoized_det, DetRing};
pub use modular::{modular_det, ModularReport};
pub use polymatrix::PolyMatrix;
pub use qmatrix::{dot, kernel_basis, QMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("rows have different lengths")]
    Ragged,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("modular reconstruction failed: {0}")]
    Reconstruction(String),
}
