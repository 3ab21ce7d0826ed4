//! Sparse multivariate polynomials over Q(sqrt 2) and the coefficient-based
//! root bound used to certify sign-constancy on max-norm balls.

mod monomial;
mod poly;
mod unipoly;

use thiserror::Error;

pub use monomial::{Monomial, MAX_VARS};
pub use poly::MvPoly;
pub use unipoly::{cauchy_companion, positive_root_bracket, positive_root_lower_bound, UniPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} variables exceed the supported maximum")]
    TooManyVariables(usize),
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("companion polynomial does not have exactly one sign change")]
    NotSingleSignChange,
    #[error("tolerance must be positive")]
    NonPositiveTolerance,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::QMatrix;
    use crate::exactnum::QSqrt2;

    fn x(n: usize, i: usize) -> MvPoly {
        MvPoly::var(n, i)
    }

    fn c(n: usize, v: QSqrt2) -> MvPoly {
        MvPoly::constant(n, v)
    }

    #[test]
    fn difference_of_squares() {
        let p = &x(2, 0) + &c(2, QSqrt2::sqrt2());
        let q = &x(2, 0) - &c(2, QSqrt2::sqrt2());
        let expected = &x(2, 0).pow(2) - &c(2, QSqrt2::from_int(2));
        assert_eq!(&p * &q, expected);
    }

    #[test]
    fn adding_zero_is_identity() {
        let p = &x(3, 2).pow(2) + &c(3, QSqrt2::ints(1, 1));
        assert_eq!(&p + &MvPoly::zero(3), p);
    }

    #[test]
    fn binomial_cube() {
        let p = (&x(2, 0) + &x(2, 1)).pow(3);
        assert_eq!(p.len(), 4);
        let coeffs: Vec<QSqrt2> = p.terms().map(|(_, c)| c.clone()).collect();
        let mut ints: Vec<i64> = coeffs.iter().map(|c| c.rat.to_f64() as i64).collect();
        ints.sort();
        assert_eq!(ints, vec![1, 1, 3, 3]);
    }

    #[test]
    fn graded_parts() {
        let p = &(&x(1, 0).pow(2) + &x(1, 0)) + &c(1, QSqrt2::one());
        assert!(p.graded_part(3).is_zero());
        assert_eq!(p.graded_part(1), x(1, 0));
        let total = (0..=2).fold(MvPoly::zero(1), |acc, d| &acc + &p.graded_part(d));
        assert_eq!(total, p);
    }

    #[test]
    fn gradient_and_hessian() {
        let n = 8;
        let p = &x(n, 0) * &x(n, 1);
        let zero = vec![QSqrt2::zero(); n];
        assert!(p.gradient().iter().all(|g| g.eval(&zero).is_zero()));

        let q = &x(n, 0).pow(2) + &(&x(n, 0) * &x(n, 1));
        let h = q.hessian();
        assert_eq!(h[0][0], c(n, QSqrt2::from_int(2)));
        assert_eq!(h[0][1], c(n, QSqrt2::one()));
        assert_eq!(h[1][0], c(n, QSqrt2::one()));
        assert!(h[1][1].is_zero());
        assert!(h[3][5].is_zero());
    }

    #[test]
    fn substitute_identity_and_scaling() {
        let n = 8;
        let zero = vec![QSqrt2::zero(); n];
        let p = x(n, 0);
        assert_eq!(p.substitute_linear(&QMatrix::identity(n), &zero).unwrap(), p);
        let sq = x(n, 0).pow(2);
        let two = QMatrix::identity(n).scale(&QSqrt2::from_int(2));
        assert_eq!(
            sq.substitute_linear(&two, &zero).unwrap(),
            sq.scale(&QSqrt2::from_int(4))
        );
        assert!(matches!(
            p.substitute_linear(&QMatrix::identity(3), &zero[..3]),
            Err(PolyError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn section_drops_trailing_variables() {
        let p = &(&x(4, 0) * &x(4, 3)) + &x(4, 1);
        assert_eq!(p.section(2), x(2, 1));
    }

    #[test]
    fn text_round_trip() {
        let p = &(&x(3, 0).pow(2) * &c(3, QSqrt2::frac(1, -3, 4))) + &c(3, QSqrt2::ints(0, 2));
        let text = p.to_text();
        assert_eq!(MvPoly::from_text(&text).unwrap(), p);
        assert!(matches!(
            MvPoly::from_text("vars 2\n1 0 0: 3\n"),
            Err(PolyError::Parse { line: 2, .. })
        ));
    }
}
