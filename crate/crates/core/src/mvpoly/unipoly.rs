use super::{MvPoly, PolyError};
use crate::exactnum::{QSqrt2, Rational};

/// Univariate polynomial over Q(sqrt 2), coefficients by ascending degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    coeffs: Vec<QSqrt2>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<QSqrt2>) -> Self {
        while coeffs.last().is_some_and(QSqrt2::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[QSqrt2] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, j: usize) -> QSqrt2 {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> QSqrt2 {
        let mut acc = QSqrt2::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(x);
            acc += c;
        }
        acc
    }

    /// Negative constant term and non-negative higher coefficients, at least
    /// one of them positive: exactly one sign change, hence exactly one
    /// positive root.
    pub fn has_single_sign_change(&self) -> bool {
        let Some(c0) = self.coeffs.first() else { return false };
        c0.is_negative()
            && self.coeffs[1..].iter().all(|c| c.signum() >= 0)
            && self.coeffs[1..].iter().any(QSqrt2::is_positive)
    }
}

/// Bracket `[lo, hi]` around the unique positive root of `f0`, with
/// `f0(lo) < 0 <= f0(hi)` and `hi - lo <= tol`.
pub fn positive_root_bracket(f0: &UniPoly, tol: &Rational) -> Result<(Rational, Rational), PolyError> {
    if !f0.has_single_sign_change() {
        return Err(PolyError::NotSingleSignChange);
    }
    if tol.signum() <= 0 {
        return Err(PolyError::NonPositiveTolerance);
    }
    let a0 = -f0.coeff(0);
    let rest = f0.coeffs()[1..].iter().fold(QSqrt2::zero(), |acc, c| &acc + c);
    // For x = 1 + a0/S >= 1: sum a_j x^j >= S x = S + a0 > a0.
    let ratio = a0.checked_div(&rest).expect("positive sum");
    let mut hi = Rational::one() + ratio.bracket(32).1.ceil_dyadic(0);
    while f0.eval(&hi).signum() < 0 {
        hi = &hi * &Rational::from_int(2);
    }
    let mut lo = Rational::zero();
    // Dyadic midpoints keep the bisection endpoints small.
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) * Rational::new(1, 2);
        if f0.eval(&mid).signum() < 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Rational `r` with `f0(r) < 0` and `r0 - r <= tol`, where `r0` is the
/// unique positive root of `f0`.
pub fn positive_root_lower_bound(f0: &UniPoly, tol: &Rational) -> Result<Rational, PolyError> {
    positive_root_bracket(f0, tol).map(|(lo, _)| lo)
}

/// Univariate majorant of a polynomial with nonzero constant term: the
/// coefficient of degree `j` is the sum of `|c_J|` over all terms of total
/// degree `j`, and the constant term is `-|f(0)|`.
///
/// No zero of `f` has max-norm below the positive root of the result.
pub fn cauchy_companion(f: &MvPoly) -> Result<UniPoly, PolyError> {
    let c0 = f.constant_term();
    if c0.is_zero() {
        return Err(PolyError::ZeroConstantTerm);
    }
    let deg = f.total_degree().unwrap_or(0) as usize;
    let mut coeffs = vec![QSqrt2::zero(); deg + 1];
    for (m, c) in f.terms() {
        let d = m.degree() as usize;
        if d > 0 {
            coeffs[d] += &c.abs();
        }
    }
    coeffs[0] = -c0.abs();
    Ok(UniPoly::new(coeffs))
}
