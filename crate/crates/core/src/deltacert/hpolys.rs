use serde::Serialize;

use super::model::{build_delta_model, DeltaModel, PerturbationRing, NVARS};
use super::CertError;
use crate::exactlinalg::{kernel_basis, QMatrix};
use crate::exactnum::{QSqrt2, Rational};
use crate::mvpoly::MvPoly;

/// `h_i(t) = v_i M(t)^# u_i - (2 + sqrt2) det M(t)` for i = 1..6.
pub fn build_h_polys(ring: &PerturbationRing, model: &DeltaModel) -> Result<[MvPoly; 6], CertError> {
    let adj = ring.m.adjugate_poly()?;
    let det = ring.m.det_poly()?;
    let shift = det.scale(&QSqrt2::ints(2, 1));
    let mut out = Vec::with_capacity(6);
    for i in 0..6 {
        let u: Vec<QSqrt2> = model.u[i].iter().map(|&x| QSqrt2::from_int(x)).collect();
        out.push(&adj.bilinear(&model.v[i], &u)? - &shift);
    }
    Ok(out.try_into().expect("six"))
}

fn combo(a: i64, ra: [i64; 8], b: i64, rb: [i64; 8]) -> Vec<QSqrt2> {
    (0..8).map(|k| QSqrt2::ints(a * ra[k], b * rb[k])).collect()
}

/// Gradients at the origin in the form `a * (integer vector) + b sqrt2 *
/// (integer vector)`.
pub fn expected_gradients() -> [Vec<QSqrt2>; 6] {
    [
        combo(4, [-1, 1, -1, -2, 0, 0, -2, 1], 2, [-2, 0, 1, -1, 0, 0, -3, 1]),
        combo(4, [-2, 1, 0, 0, 1, 2, 1, 1], 2, [-1, -1, 0, 0, 1, 3, 0, 2]),
        combo(4, [0, 0, 2, -1, 1, -1, 1, 2], 2, [0, 0, 3, -1, 2, 0, -1, 1]),
        combo(4, [-1, -2, -1, -1, 2, -1, 0, 0], 2, [-1, -3, 0, -2, 1, 1, 0, 0]),
        combo(8, [1, 0, -1, 0, -1, 0, 1, 0], 8, [1, 0, 0, 0, -1, 0, 0, 0]),
        combo(8, [0, 1, 0, 1, 0, -1, 0, -1], 8, [0, 0, 0, 1, 0, 0, 0, -1]),
    ]
}

pub fn gradient_at_zero(p: &MvPoly) -> Vec<QSqrt2> {
    let zero = vec![QSqrt2::zero(); p.nvars()];
    p.gradient().iter().map(|g| g.eval(&zero)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DependenceCheck {
    pub combination_is_zero: bool,
    pub rank: usize,
}

/// Exact test of `sum lambda_i grad_i = 0`, with the rank of the gradients.
pub fn check_dependence(grads: &[Vec<QSqrt2>], lambda: &[QSqrt2]) -> DependenceCheck {
    let n = grads.first().map_or(0, Vec::len);
    let sum: Vec<QSqrt2> = (0..n)
        .map(|k| {
            grads
                .iter()
                .zip(lambda)
                .fold(QSqrt2::zero(), |acc, (g, l)| &acc + &(&g[k] * l))
        })
        .collect();
    let rank = QMatrix::from_rows(grads.to_vec()).map(|m| m.rank()).unwrap_or(0);
    DependenceCheck {
        combination_is_zero: sum.iter().all(QSqrt2::is_zero),
        rank,
    }
}

/// `h(t) = sum (c - l_i(t)) lambda_i h_i(t)` with `l_i` the linear part of
/// `lambda_i h_i`.
pub fn build_h_aggregate(hs: &[MvPoly; 6], lambda: &[QSqrt2; 6], c: &Rational) -> Result<MvPoly, CertError> {
    if c.signum() <= 0 {
        return Err(CertError::NonPositiveC);
    }
    let cc = MvPoly::constant(NVARS, QSqrt2::from_rational(c.clone()));
    let mut h = MvPoly::zero(NVARS);
    for (hi, li) in hs.iter().zip(lambda) {
        let lh = hi.scale(li);
        let l = lh.graded_part(1);
        h = &h + &(&(&cc - &l) * &lh);
    }
    if gradient_at_zero(&h).iter().any(|g| !g.is_zero()) || !h.constant_term().is_zero() {
        return Err(CertError::Invariant("aggregate is not critical at the origin".into()));
    }
    Ok(h)
}

/// Basis of the common kernel of the six gradients, as given in closed form.
pub fn closed_form_kernel_basis() -> Vec<Vec<QSqrt2>> {
    let h = |a: i64, b: i64| QSqrt2::frac(a, b, 2);
    let i = |a: i64, b: i64| QSqrt2::ints(a, b);
    vec![
        vec![i(1, 0), i(0, 0), i(0, 0), i(0, 0), h(0, 1), h(0, 1), h(0, -1), h(-2, 1)],
        vec![
            i(0, 0),
            i(1, 0),
            i(0, 0),
            i(0, -1),
            h(2, -1),
            h(2, -1),
            h(0, 1),
            h(2, -3),
        ],
        vec![
            i(0, 0),
            i(0, 0),
            i(1, 0),
            i(-1, 0),
            i(1, -1),
            i(1, 0),
            i(0, 0),
            i(0, -1),
        ],
    ]
}

/// Expected Hessian of the summed quadratic parts restricted to the kernel.
pub fn closed_form_restricted_hessian() -> QMatrix {
    let h = |a: i64, b: i64| QSqrt2::frac(a, b, 2);
    let i = |a: i64, b: i64| QSqrt2::ints(a, b);
    QMatrix::from_rows(vec![
        vec![h(-26, -19), h(-8, -5), i(-2, -1)],
        vec![h(-8, -5), h(-54, -39), i(-22, -16)],
        vec![i(-2, -1), i(-22, -16), i(-26, -19)],
    ])
    .expect("3x3")
}

/// `k` with `a = k b` entrywise, for nonzero `b`.
fn proportionality(a: &QMatrix, b: &QMatrix) -> Option<QSqrt2> {
    let k = a.get(0, 0).checked_div(b.get(0, 0)).ok()?;
    let same_shape = a.rows() == b.rows() && a.cols() == b.cols();
    let all = (0..b.rows()).all(|r| (0..b.cols()).all(|c| *a.get(r, c) == &k * b.get(r, c)));
    (same_shape && all).then_some(k)
}

fn hessian_at_zero(p: &MvPoly) -> QMatrix {
    let zero = vec![QSqrt2::zero(); p.nvars()];
    let rows = p
        .hessian()
        .iter()
        .map(|r| r.iter().map(|e| e.eval(&zero)).collect())
        .collect();
    QMatrix::from_rows(rows).expect("square")
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalCertificate {
    pub c: Rational,
    pub gradients: Vec<Vec<QSqrt2>>,
    pub gradients_match: bool,
    pub dependence: DependenceCheck,
    pub kernel_dimension: usize,
    pub kernel_basis_spans: bool,
    pub restricted_hessian: Vec<Vec<QSqrt2>>,
    /// Entry-for-entry equality with the closed-form matrix.
    pub restricted_matches: bool,
    /// `k` with `restricted = k * closed form`, if the two are proportional.
    pub restricted_scale: Option<QSqrt2>,
    /// Hessian at 0 of `sum lambda_i (f_i - (2 + sqrt2))`, with
    /// `f_i = v_i M(t)^{-1} u_i`, restricted to the kernel. Equals the sum-q
    /// restriction divided by `det M(0)`.
    pub restricted_f_hessian: Vec<Vec<QSqrt2>>,
    /// Entry-for-entry equality of the f-form restriction with the closed form.
    pub restricted_f_matches: bool,
    pub restricted_minors: Vec<QSqrt2>,
    pub restricted_negative_definite: bool,
    pub hessian_minors: Vec<QSqrt2>,
    pub hessian_negative_definite: bool,
    pub verdict: bool,
}

/// Everything needed for the local maximality argument at a given `c`.
pub fn local_maximality_certificate(c: &Rational) -> Result<LocalCertificate, CertError> {
    if c.signum() <= 0 {
        return Err(CertError::NonPositiveC);
    }
    let model = build_delta_model()?;
    let ring = PerturbationRing::new(&model)?;
    let hs = build_h_polys(&ring, &model)?;
    let det = ring.m.det_poly()?;
    local_certificate_from(&model, &hs, &det, c)
}

pub(crate) fn local_certificate_from(
    model: &DeltaModel,
    hs: &[MvPoly; 6],
    det: &MvPoly,
    c: &Rational,
) -> Result<LocalCertificate, CertError> {
    let gradients: Vec<Vec<QSqrt2>> = hs.iter().map(gradient_at_zero).collect();
    let gradients_match = gradients.as_slice() == expected_gradients().as_slice();
    let dependence = check_dependence(&gradients, &model.lambda);

    let kernel = kernel_basis(&gradients, NVARS)?;
    let basis = closed_form_kernel_basis();
    let in_kernel = basis
        .iter()
        .all(|v| gradients.iter().all(|g| crate::exactlinalg::dot(g, v).is_zero()));
    let independent = QMatrix::from_rows(basis.clone())?.rank() == 3;
    let kernel_basis_spans = in_kernel && independent && kernel.len() == 3;

    let sum_q = hs
        .iter()
        .zip(&model.lambda)
        .fold(MvPoly::zero(NVARS), |acc, (h, l)| &acc + &h.scale(l).graded_part(2));
    let restricted = hessian_at_zero(&sum_q).restrict_quadratic_form(&basis)?;
    let restricted_minors = restricted.leading_principal_minors()?;
    let restricted_negative_definite = restricted.is_negative_definite()?;

    let h = build_h_aggregate(hs, &model.lambda, c)?;
    let hess = hessian_at_zero(&h);
    let hessian_minors = hess.leading_principal_minors()?;
    let hessian_negative_definite = hess.is_negative_definite()?;

    // With h_i = det (f_i - w) and det = d0 + d1 + ..., the quadratic part of
    // f_i - w is q_i/d0 - l_i d1/d0^2.
    let d0 = det.constant_term();
    let d1 = det.graded_part(1);
    let inv_d0 = QSqrt2::one()
        .checked_div(&d0)
        .map_err(|_| CertError::Invariant("det M(0) = 0".into()))?;
    let sum_f = hs.iter().zip(&model.lambda).fold(MvPoly::zero(NVARS), |acc, (h, l)| {
        let lh = h.scale(l);
        let quad = &lh.graded_part(2).scale(&inv_d0) - &(&lh.graded_part(1) * &d1).scale(&(&inv_d0 * &inv_d0));
        &acc + &quad
    });
    let restricted_f = hessian_at_zero(&sum_f).restrict_quadratic_form(&basis)?;

    let printed = closed_form_restricted_hessian();
    let restricted_f_matches = restricted_f == printed;
    let restricted_matches = restricted == printed;
    let restricted_scale = proportionality(&restricted, &printed);
    let verdict = gradients_match
        && dependence.combination_is_zero
        && dependence.rank == 5
        && kernel_basis_spans
        && restricted_negative_definite
        && hessian_negative_definite;
    Ok(LocalCertificate {
        c: c.clone(),
        gradients,
        gradients_match,
        dependence,
        kernel_dimension: kernel.len(),
        kernel_basis_spans,
        restricted_hessian: restricted.to_rows(),
        restricted_matches,
        restricted_scale,
        restricted_f_hessian: restricted_f.to_rows(),
        restricted_f_matches,
        restricted_minors,
        restricted_negative_definite,
        hessian_minors,
        hessian_negative_definite,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (DeltaModel, [MvPoly; 6]) {
        let model = build_delta_model().unwrap();
        let ring = PerturbationRing::new(&model).unwrap();
        let hs = build_h_polys(&ring, &model).unwrap();
        (model, hs)
    }

    #[test]
    fn h_polys_are_cubic_and_vanish() {
        let (_, hs) = setup();
        for h in &hs {
            assert_eq!(h.total_degree(), Some(3));
            assert!(h.constant_term().is_zero());
        }
    }

    #[test]
    fn gradient_of_fifth() {
        let (_, hs) = setup();
        assert_eq!(gradient_at_zero(&hs[4]), expected_gradients()[4]);
    }

    #[test]
    fn all_ones_is_not_a_dependence() {
        let (_, hs) = setup();
        let grads: Vec<Vec<QSqrt2>> = hs.iter().map(gradient_at_zero).collect();
        assert!(!check_dependence(&grads, &vec![QSqrt2::one(); 6]).combination_is_zero);
    }

    #[test]
    fn certificate_small_and_large_c() {
        let ok = local_maximality_certificate(&Rational::new(39, 4)).unwrap();
        assert!(ok.verdict && ok.gradients_match && ok.restricted_f_matches);
        // The closed form is the f-form, i.e. the sum-q form over det M(0) = 16.
        assert!(!ok.restricted_matches);
        assert_eq!(ok.restricted_scale, Some(QSqrt2::from_int(16)));
        let bad = local_maximality_certificate(&Rational::from_int(14)).unwrap();
        assert!(!bad.hessian_negative_definite && !bad.verdict);
        assert_eq!(
            local_maximality_certificate(&Rational::zero()).unwrap_err(),
            CertError::NonPositiveC
        );
    }
}
