use std::time::Instant;

use serde::Serialize;

use super::conditions::{
    cond_i_bound, cond_ii_bound, cond_iii_bound, cond_iv_bound, cond_iv_section_bound, hessian_matrix_s,
    linear_parts_s, round5, CondIResult, CondIiResult, CondIiiResult, CondIvResult, SectionResult,
};
use super::hpolys::{build_h_aggregate, build_h_polys, local_certificate_from, LocalCertificate};
use super::model::{build_delta_model, DeltaModel, PerturbationRing};
use super::scoords::{symmetry_check_with, SCoords, SymmetryReport};
use super::CertError;
use crate::exactnum::{QSqrt2, Rational};
use crate::mvpoly::MvPoly;

/// How the Hessian condition is handled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HessianMode {
    Skip,
    /// Non-certifying run on the section keeping the first `k` s-variables.
    Section(usize),
    Full,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionBounds {
    pub c: Rational,
    pub r_det: Rational,
    pub r_lin: Rational,
    pub r_quad: Rational,
    pub r_hess: Option<Rational>,
    /// Minimum of the available radii.
    pub overall: Rational,
    /// All four radii were computed, so `overall` is certified.
    pub complete: bool,
    /// Radius in barycentric coordinates on the facets: overall / 2.
    pub barycentric: Rational,
}

impl ConditionBounds {
    /// Five-decimal rounded row: (i), (ii), (iii), (iv).
    pub fn row(&self) -> [String; 4] {
        [
            round5(&self.r_det),
            round5(&self.r_lin),
            round5(&self.r_quad),
            self.r_hess.as_ref().map_or_else(|| "skipped".to_string(), round5),
        ]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelSummary {
    pub width: QSqrt2,
    pub minimizers: usize,
    pub hollow: bool,
    pub difference_vertices: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub c: Rational,
    pub model: ModelSummary,
    pub local: LocalCertificate,
    pub symmetry: SymmetryReport,
    pub cond_i: CondIResult,
    pub cond_ii: CondIiResult,
    pub cond_iii: CondIiiResult,
    pub cond_iv: Option<CondIvResult>,
    pub section: Option<SectionResult>,
    pub bounds: ConditionBounds,
    pub passed: bool,
    #[serde(skip)]
    pub seconds: f64,
}

/// The c-independent part of the pipeline, computed once and shared by
/// every value of `c` in a sweep.
pub struct Pipeline {
    model: DeltaModel,
    hs: [MvPoly; 6],
    det: MvPoly,
    sc: SCoords,
    symmetry: SymmetryReport,
    linear_s: Vec<MvPoly>,
    cond_i: CondIResult,
    cond_iii: CondIiiResult,
    pub setup_seconds: f64,
}

impl Pipeline {
    pub fn new(tol: &Rational) -> Result<Self, CertError> {
        let start = Instant::now();
        let model = build_delta_model()?;
        let ring = PerturbationRing::new(&model)?;
        let sc = SCoords::new();
        let hs = build_h_polys(&ring, &model)?;
        let det = ring.m.det_poly()?;
        let linear_s = linear_parts_s(&hs, &model.lambda, &sc);
        let symmetry = symmetry_check_with(&model, &ring, &sc, Some(&linear_s))?;
        let cond_i = cond_i_bound(&model, &sc);
        let cond_iii = cond_iii_bound(&model, &ring, &sc, tol)?;
        Ok(Pipeline {
            model,
            hs,
            det,
            sc,
            symmetry,
            linear_s,
            cond_i,
            cond_iii,
            setup_seconds: start.elapsed().as_secs_f64(),
        })
    }

    pub fn certify(&self, c: &Rational, mode: HessianMode, tol: &Rational) -> Result<CertificateReport, CertError> {
        if c.signum() <= 0 {
            return Err(CertError::NonPositiveC);
        }
        let start = Instant::now();
        let model = &self.model;
        let local = local_certificate_from(model, &self.hs, &self.det, c)?;
        let cond_ii = cond_ii_bound(&self.linear_s, c)?;

        let (cond_iv, section) = match mode {
            HessianMode::Skip => (None, None),
            _ if !local.hessian_negative_definite => (None, None),
            HessianMode::Section(k) => {
                let h = build_h_aggregate(&self.hs, &model.lambda, c)?;
                let hess = hessian_matrix_s(&h, &self.sc)?;
                (None, Some(cond_iv_section_bound(&hess, k, tol)?))
            }
            HessianMode::Full => {
                let h = build_h_aggregate(&self.hs, &model.lambda, c)?;
                let hess = hessian_matrix_s(&h, &self.sc)?;
                (Some(cond_iv_bound(&hess, c, tol)?), None)
            }
        };

        let cond_i = self.cond_i.clone();
        let cond_iii = self.cond_iii.clone();
        let r_hess = cond_iv.as_ref().map(|r| r.radius.clone());
        let mut overall = cond_i
            .radius
            .clone()
            .min(cond_ii.radius.clone())
            .min(cond_iii.radius.clone());
        if let Some(r) = &r_hess {
            overall = overall.min(r.clone());
        }
        let bounds = ConditionBounds {
            c: c.clone(),
            r_det: cond_i.radius.clone(),
            r_lin: cond_ii.radius.clone(),
            r_quad: cond_iii.radius.clone(),
            complete: r_hess.is_some(),
            r_hess,
            barycentric: &overall * &Rational::new(1, 2),
            overall,
        };
        let passed = local.verdict
            && self.symmetry.verdict
            && cond_i.corners_ok
            && cond_ii.sums_match
            && cond_iii.constants_positive
            && section.as_ref().is_none_or(|s| s.routes_agree)
            && (mode != HessianMode::Full || cond_iv.is_some());
        Ok(CertificateReport {
            c: c.clone(),
            model: ModelSummary {
                width: model.width.width.clone(),
                minimizers: model.width.minimizers.len(),
                hollow: model.hollow,
                difference_vertices: model.difference_vertices.len(),
            },
            local,
            symmetry: self.symmetry.clone(),
            cond_i,
            cond_ii,
            cond_iii,
            cond_iv,
            section,
            bounds,
            passed,
            seconds: start.elapsed().as_secs_f64(),
        })
    }
}

/// Runs the whole local pipeline for one value of `c`.
pub fn certify(c: &Rational, mode: HessianMode, tol: &Rational) -> Result<CertificateReport, CertError> {
    if c.signum() <= 0 {
        return Err(CertError::NonPositiveC);
    }
    Pipeline::new(tol)?.certify(c, mode, tol)
}
