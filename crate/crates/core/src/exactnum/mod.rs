//! Exact scalars: rationals, the field Q(sqrt 2), rational interval
//! enclosures and certified comparisons of algebraic expressions.

mod expr;
mod interval;
mod qsqrt2;
mod rational;

use thiserror::Error;

pub use expr::{certify_less, compare_with_enclosures, interval_eval, AlgExpr, RefineConfig};
pub use interval::RatInterval;
pub use qsqrt2::{sqrt2_bracket, QSqrt2};
pub use rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor enclosure contains zero")]
    DivisorContainsZero,
    #[error("square root of a negative interval")]
    NegativeSqrt,
    #[error("interval with lo > hi")]
    EmptyInterval,
    #[error("precision must be positive")]
    NonPositivePrecision,
    #[error("requested precision not reached within the refinement limit")]
    PrecisionNotReached,
    #[error("undecided at max refinement depth: values too close or equal")]
    Undecided,
    #[error("cannot parse {0:?} as an exact scalar")]
    Parse(String),
}

/// Parses the exact scalar syntax `p/q`, `r/s*sqrt2`, `p/q + r/s*sqrt2`
/// (any number of `+`/`-` separated terms). Floating-point literals are
/// rejected.
pub fn parse_qsqrt2(s: &str) -> Result<QSqrt2, ArithError> {
    let bad = || ArithError::Parse(s.to_string());
    if s.contains('.') {
        return Err(bad());
    }
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    // Split into signed terms at top-level + and -.
    let mut terms = Vec::new();
    let mut current = String::new();
    for (i, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with(['*', '/']) {
            terms.push(std::mem::take(&mut current));
        }
        current.push(ch);
    }
    terms.push(current);

    let mut acc = QSqrt2::zero();
    for term in terms {
        let (neg, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, term.strip_prefix('+').unwrap_or(&term)),
        };
        if body.is_empty() {
            return Err(bad());
        }
        let value = if let Some(coef) = body.strip_suffix("sqrt2") {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let r = if coef.is_empty() {
                Rational::one()
            } else {
                coef.parse::<Rational>().map_err(|_| bad())?
            };
            QSqrt2::new(Rational::zero(), r)
        } else if body.contains("sqrt") {
            return Err(bad());
        } else {
            QSqrt2::from_rational(body.parse::<Rational>().map_err(|_| bad())?)
        };
        if neg {
            acc -= &value;
        } else {
            acc += &value;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_syntax() {
        assert_eq!(parse_qsqrt2("3/4 + 1/2*sqrt2").unwrap(), QSqrt2::frac(3, 2, 4));
        assert_eq!(parse_qsqrt2("2 + 1*sqrt2").unwrap(), QSqrt2::ints(2, 1));
        assert_eq!(parse_qsqrt2("-2-sqrt2").unwrap(), QSqrt2::ints(-2, -1));
        assert_eq!(parse_qsqrt2("sqrt2").unwrap(), QSqrt2::ints(0, 1));
        assert_eq!(parse_qsqrt2("-3/4*sqrt2").unwrap(), QSqrt2::frac(0, -3, 4));
        assert_eq!(parse_qsqrt2(" 7 ").unwrap(), QSqrt2::from_int(7));
        assert_eq!(parse_qsqrt2("1/4 - 3/4*sqrt2").unwrap(), QSqrt2::frac(1, -3, 4));
    }

    #[test]
    fn rejects_floats_and_garbage() {
        for bad in ["1.5", "0.5*sqrt2", "1e3", "", "sqrt3", "2 +", "x", "1/0"] {
            assert!(parse_qsqrt2(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn display_round_trips() {
        for q in [
            QSqrt2::ints(2, 1),
            QSqrt2::frac(-7, 3, 4),
            QSqrt2::frac(0, -1, 3),
            QSqrt2::zero(),
        ] {
            assert_eq!(parse_qsqrt2(&q.to_string()).unwrap(), q);
        }
    }
}
