use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::model::{DeltaModel, PerturbationRing};
use super::scoords::SCoords;
use super::CertError;
use crate::exactlinalg::{modular_det, ModularReport, PolyMatrix};
use crate::exactnum::{QSqrt2, Rational};
use crate::mvpoly::{cauchy_companion, positive_root_lower_bound, MvPoly};

/// Five-decimal display, rounding half away from zero.
pub fn round5(r: &Rational) -> String {
    r.to_decimal_round(5)
}

fn root_bound(f: &MvPoly, tol: &Rational, name: impl Fn() -> String) -> Result<Rational, CertError> {
    let f0 = cauchy_companion(f).map_err(|_| CertError::ZeroConstantTerm(name()))?;
    Ok(positive_root_lower_bound(&f0, tol)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct CondIResult {
    /// (sqrt2 - 1)/4.
    pub exact: QSqrt2,
    pub radius: Rational,
    /// Center of the ball: s-coordinates of p1.
    pub center: (QSqrt2, QSqrt2),
    pub corners_ok: bool,
    /// Enlarging the radius by 1/100 breaks one of the inequalities.
    pub enlarged_fails: bool,
}

fn corners_satisfy(center: &(QSqrt2, QSqrt2), r: &QSqrt2) -> bool {
    let half = QSqrt2::frac(1, 0, 2);
    [(1, 1), (1, -1), (-1, 1), (-1, -1)].iter().all(|&(sh, sv)| {
        let h = &center.0 + &r.scale(&Rational::from_int(sh));
        let v = &center.1 + &r.scale(&Rational::from_int(sv));
        v <= half && (&v + &h).signum() >= 0 && (&v - &h).signum() >= 0
    })
}

/// Radius on which the orientation of the four facet points cannot change:
/// the max-norm ball around p1's coordinates stays inside the medial
/// triangle `s^v < 1/2, s^v + s^h > 0, s^v - s^h > 0`.
pub fn cond_i_bound(model: &DeltaModel, sc: &SCoords) -> CondIResult {
    let exact = QSqrt2::frac(-1, 1, 4);
    let center = sc.pair(0, &model.p[0][0], &model.p[0][1]);
    let corners_ok = corners_satisfy(&center, &exact);
    let enlarged = &exact + &QSqrt2::frac(1, 0, 100);
    let enlarged_fails = !corners_satisfy(&center, &enlarged);
    CondIResult {
        radius: exact.lower_dyadic(64),
        exact,
        center,
        corners_ok,
        enlarged_fails,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CondIiResult {
    pub c: Rational,
    /// Sum of absolute coefficients of each `l_i` in s-coordinates.
    pub sums: Vec<QSqrt2>,
    pub sums_match: bool,
    /// `c / max_i sums[i]`.
    pub exact: QSqrt2,
    pub radius: Rational,
}

pub fn linear_parts_s(hs: &[MvPoly; 6], lambda: &[QSqrt2; 6], sc: &SCoords) -> Vec<MvPoly> {
    hs.iter()
        .zip(lambda)
        .map(|(h, l)| sc.to_s(&h.scale(l).graded_part(1)))
        .collect()
}

/// Max-norm radius on which all six `l_i(s) < c`.
pub fn cond_ii_bound(linear_s: &[MvPoly], c: &Rational) -> Result<CondIiResult, CertError> {
    if c.signum() <= 0 {
        return Err(CertError::NonPositiveC);
    }
    let sums: Vec<QSqrt2> = linear_s
        .iter()
        .map(|l| l.terms().fold(QSqrt2::zero(), |acc, (_, x)| &acc + &x.abs()))
        .collect();
    let expected = [QSqrt2::ints(112, 64), QSqrt2::ints(192, 128)];
    let sums_match =
        sums.len() == 6 && sums[..4].iter().all(|s| *s == expected[0]) && sums[4..].iter().all(|s| *s == expected[1]);
    let max = sums.iter().max().cloned().unwrap_or_else(QSqrt2::one);
    let exact = QSqrt2::from_rational(c.clone())
        .checked_div(&max)
        .expect("positive sum");
    Ok(CondIiResult {
        c: c.clone(),
        radius: exact.lower_dyadic(64),
        exact,
        sums,
        sums_match,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CondIiiResult {
    pub count: usize,
    pub constants_positive: bool,
    pub radius: Rational,
    /// Functional index (1-based) and difference-body vertex attaining the minimum.
    pub worst: (usize, usize),
}

/// The 66 quadratic polynomials `(v_i - v) M(t)^# u_i`, in s-coordinates,
/// tagged with the functional index and the vertex index.
pub fn width_comparison_polys(
    model: &DeltaModel,
    ring: &PerturbationRing,
    sc: &SCoords,
) -> Result<Vec<(usize, usize, MvPoly)>, CertError> {
    let adj = ring.m.adjugate_poly()?;
    let mut out = Vec::new();
    for i in 0..6 {
        let u: Vec<QSqrt2> = model.u[i].iter().map(|&x| QSqrt2::from_int(x)).collect();
        for (k, w) in model.difference_vertices.iter().enumerate() {
            if *w == model.v[i] {
                continue;
            }
            let d: Vec<QSqrt2> = (0..3).map(|j| &model.v[i][j] - &w[j]).collect();
            out.push((i, k, sc.to_s(&adj.bilinear(&d, &u)?)));
        }
    }
    Ok(out)
}

pub fn cond_iii_bound(
    model: &DeltaModel,
    ring: &PerturbationRing,
    sc: &SCoords,
    tol: &Rational,
) -> Result<CondIiiResult, CertError> {
    let polys = width_comparison_polys(model, ring, sc)?;
    let constants_positive = polys.iter().all(|(_, _, p)| p.constant_term().is_positive());
    let radii: Vec<Rational> = polys
        .par_iter()
        .map(|(i, k, p)| root_bound(p, tol, || format!("width comparison ({}, {})", i + 1, k + 1)))
        .collect::<Result<_, _>>()?;
    let (idx, radius) = radii.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).expect("nonempty");
    let worst = (polys[idx].0 + 1, polys[idx].1 + 1);
    Ok(CondIiiResult {
        count: polys.len(),
        constants_positive,
        radius: radius.clone(),
        worst,
    })
}

/// `grad^2 h` with respect to `t`, with every entry rewritten in `s`.
pub fn hessian_matrix_s(h: &MvPoly, sc: &SCoords) -> Result<PolyMatrix, CertError> {
    let rows = h
        .hessian()
        .iter()
        .map(|r| r.iter().map(|e| sc.to_s(e)).collect())
        .collect();
    Ok(PolyMatrix::from_rows(rows)?)
}

/// Fixed rational sample points for the evaluation cross-check.
fn sample_points(nvars: usize) -> Vec<Vec<QSqrt2>> {
    let a: Vec<QSqrt2> = (0..nvars)
        .map(|i| QSqrt2::frac(i as i64 - 3, 0, 7 + i as i64))
        .collect();
    let b: Vec<QSqrt2> = (0..nvars).map(|i| QSqrt2::frac(2 * (i as i64 % 3) - 1, 0, 5)).collect();
    vec![a, b]
}

#[derive(Clone, Debug, Serialize)]
pub struct CondIvResult {
    pub c: Rational,
    pub radius: Rational,
    pub terms: usize,
    pub degree: u32,
    pub constant_term: QSqrt2,
    pub definite_at_zero: bool,
    /// Determinant polynomial agrees with elimination at sample points.
    pub evaluation_checks: usize,
    pub modular: ModularReport,
    #[serde(skip)]
    pub seconds: f64,
}

/// Radius on which `det grad^2 h(s)` keeps the sign it has at the origin;
/// since the Hessian is negative definite there, it stays negative definite
/// on the whole (connected) ball.
pub fn cond_iv_bound(hessian_s: &PolyMatrix, c: &Rational, tol: &Rational) -> Result<CondIvResult, CertError> {
    let start = Instant::now();
    let zero = vec![QSqrt2::zero(); hessian_s.nvars()];
    let at_zero = hessian_s.eval(&zero);
    let definite_at_zero = at_zero.is_negative_definite()?;
    if !definite_at_zero {
        return Err(CertError::Invariant(
            "Hessian is not negative definite at the origin".into(),
        ));
    }
    let (det, modular) = modular_det(hessian_s)?;
    let mut evaluation_checks = 0;
    for pt in sample_points(hessian_s.nvars()) {
        if det.eval(&pt) != hessian_s.eval(&pt).det()? {
            return Err(CertError::Invariant(
                "determinant polynomial fails an evaluation check".into(),
            ));
        }
        evaluation_checks += 1;
    }
    let constant_term = det.constant_term();
    if constant_term != at_zero.det()? {
        return Err(CertError::Invariant("determinant constant term mismatch".into()));
    }
    let radius = root_bound(&det, tol, || "Hessian determinant".into())?;
    Ok(CondIvResult {
        c: c.clone(),
        radius,
        terms: det.len(),
        degree: det.total_degree().unwrap_or(0),
        constant_term,
        definite_at_zero,
        evaluation_checks,
        modular,
        seconds: start.elapsed().as_secs_f64(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SectionResult {
    pub variables: usize,
    pub terms: usize,
    /// Memoized expansion over exact coefficients equals the modular result.
    pub routes_agree: bool,
    /// Root bound of the section determinant; not a certificate for the full ball.
    pub radius: Rational,
}

/// Smoke run on the section where all but the first `k` s-variables vanish.
pub fn cond_iv_section_bound(hessian_s: &PolyMatrix, k: usize, tol: &Rational) -> Result<SectionResult, CertError> {
    let section = hessian_s.map(|e| e.section(k));
    let exact = section.det_poly()?;
    let (modular, _) = modular_det(&section)?;
    let radius = root_bound(&exact, tol, || "section determinant".into())?;
    Ok(SectionResult {
        variables: k,
        terms: exact.len(),
        routes_agree: exact == modular,
        radius,
    })
}
