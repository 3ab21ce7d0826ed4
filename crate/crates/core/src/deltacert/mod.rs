//! The hollow tetrahedron of width 2 + sqrt2, its lattice perturbations and
//! the certificate that it is a strict local width maximizer on an explicit
//! neighborhood.

mod conditions;
mod hpolys;
mod model;
mod report;
mod scoords;

use thiserror::Error;

pub use conditions::{
    cond_i_bound, cond_ii_bound, cond_iii_bound, cond_iv_bound, cond_iv_section_bound, hessian_matrix_s,
    linear_parts_s, round5, width_comparison_polys, CondIResult, CondIiResult, CondIiiResult, CondIvResult,
    SectionResult,
};
pub use hpolys::{
    build_h_aggregate, build_h_polys, check_dependence, closed_form_kernel_basis, closed_form_restricted_hessian,
    expected_gradients, gradient_at_zero, local_maximality_certificate, LocalCertificate,
};
pub use model::{build_delta_model, extremal_functionals, DeltaModel, PerturbationRing, NVARS};
pub use report::{certify, CertificateReport, ConditionBounds, HessianMode, ModelSummary, Pipeline};
pub use scoords::{symmetry_check, SCoords, SymmetryReport};

use crate::exactlinalg::LinalgError;
use crate::mvpoly::PolyError;
use crate::widthlab::WidthError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertError {
    #[error("model invariant failed: {0}")]
    Invariant(String),
    #[error("c must be positive")]
    NonPositiveC,
    #[error("polynomial {0} has zero constant term")]
    ZeroConstantTerm(String),
    #[error(transparent)]
    Width(#[from] WidthError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
