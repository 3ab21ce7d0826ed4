use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{ArithError, QSqrt2, RatInterval, Rational};

/// Real algebraic expression built from exact constants, field operations,
/// square roots, cube roots and integer powers.
#[derive(Clone, PartialEq, Eq)]
pub enum AlgExpr {
    Rat(Rational),
    Quad(QSqrt2),
    Add(Box<AlgExpr>, Box<AlgExpr>),
    Sub(Box<AlgExpr>, Box<AlgExpr>),
    Mul(Box<AlgExpr>, Box<AlgExpr>),
    Div(Box<AlgExpr>, Box<AlgExpr>),
    Neg(Box<AlgExpr>),
    Sqrt(Box<AlgExpr>),
    Cbrt(Box<AlgExpr>),
    Pow(Box<AlgExpr>, i32),
}

/// Refinement limits for [`certify_less`].
#[derive(Clone, Debug)]
pub struct RefineConfig {
    /// Give up once both enclosures are at most this wide.
    pub max_width: Rational,
}

impl Default for RefineConfig {
    fn default() -> Self {
        RefineConfig {
            max_width: Rational::pow10_neg(20),
        }
    }
}

// Level i of the refinement schedule works with dyadic grids of
// `LEVEL_BASE_BITS + LEVEL_STEP_BITS * i` bits.
const LEVEL_BASE_BITS: u32 = 24;
const LEVEL_STEP_BITS: u32 = 24;
const MAX_LEVEL: u32 = 160;

impl AlgExpr {
    pub fn int(n: i64) -> Self {
        AlgExpr::Rat(Rational::from_int(n))
    }

    pub fn rat(r: Rational) -> Self {
        AlgExpr::Rat(r)
    }

    pub fn frac(n: i64, d: i64) -> Self {
        AlgExpr::Rat(Rational::new(n, d))
    }

    pub fn quad(q: QSqrt2) -> Self {
        AlgExpr::Quad(q)
    }

    /// Parses an exact decimal literal, e.g. `AlgExpr::decimal("3.972")`.
    pub fn decimal(s: &str) -> Result<Self, ArithError> {
        Ok(AlgExpr::Rat(Rational::from_decimal(s)?))
    }

    pub fn sqrt(self) -> Self {
        AlgExpr::Sqrt(Box::new(self))
    }

    pub fn cbrt(self) -> Self {
        AlgExpr::Cbrt(Box::new(self))
    }

    pub fn powi(self, e: i32) -> Self {
        AlgExpr::Pow(Box::new(self), e)
    }

    /// Exact value when the expression avoids roots other than sqrt2
    /// constants; `None` otherwise or on division by zero.
    pub fn exact_value(&self) -> Option<QSqrt2> {
        Some(match self {
            AlgExpr::Rat(r) => QSqrt2::from_rational(r.clone()),
            AlgExpr::Quad(q) => q.clone(),
            AlgExpr::Add(a, b) => a.exact_value()? + b.exact_value()?,
            AlgExpr::Sub(a, b) => a.exact_value()? - b.exact_value()?,
            AlgExpr::Mul(a, b) => a.exact_value()? * b.exact_value()?,
            AlgExpr::Div(a, b) => a.exact_value()?.checked_div(&b.exact_value()?).ok()?,
            AlgExpr::Neg(a) => -a.exact_value()?,
            AlgExpr::Sqrt(_) | AlgExpr::Cbrt(_) => return None,
            AlgExpr::Pow(a, e) => {
                let base = a.exact_value()?;
                let p = base.pow(e.unsigned_abs());
                if *e < 0 {
                    p.inv().ok()?
                } else {
                    p
                }
            }
        })
    }

    /// Enclosure at a fixed refinement level, rounded outward to the level's
    /// dyadic grid at every node.
    fn eval_level(&self, bits: u32) -> Result<RatInterval, ArithError> {
        let out = match self {
            AlgExpr::Rat(r) => RatInterval::point(r.clone()),
            AlgExpr::Quad(q) => {
                let (lo, hi) = q.bracket(bits + 4);
                RatInterval::new(lo, hi)?
            }
            AlgExpr::Add(a, b) => a.eval_level(bits)?.add(&b.eval_level(bits)?),
            AlgExpr::Sub(a, b) => a.eval_level(bits)?.sub(&b.eval_level(bits)?),
            AlgExpr::Mul(a, b) => a.eval_level(bits)?.mul(&b.eval_level(bits)?),
            AlgExpr::Div(a, b) => a.eval_level(bits)?.div(&b.eval_level(bits)?)?,
            AlgExpr::Neg(a) => a.eval_level(bits)?.neg(),
            AlgExpr::Sqrt(a) => a.eval_level(bits)?.sqrt(bits)?,
            AlgExpr::Cbrt(a) => a.eval_level(bits)?.cbrt(bits),
            AlgExpr::Pow(a, e) => {
                let p = a.eval_level(bits)?.powi(e.unsigned_abs());
                if *e < 0 {
                    p.recip()?
                } else {
                    p
                }
            }
        };
        Ok(out.round_out(bits))
    }

    /// Nested enclosure sequence: the k-th item is the intersection of the
    /// first k level evaluations, so later items are always subsets of
    /// earlier ones.
    fn enclosures(&self) -> Enclosures<'_> {
        Enclosures {
            expr: self,
            level: 0,
            current: None,
        }
    }
}

struct Enclosures<'a> {
    expr: &'a AlgExpr,
    level: u32,
    current: Option<RatInterval>,
}

impl Iterator for Enclosures<'_> {
    type Item = Result<RatInterval, ArithError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if self.level > MAX_LEVEL {
                return None;
            }
            let bits = LEVEL_BASE_BITS + LEVEL_STEP_BITS * self.level;
            self.level += 1;
            match self.expr.eval_level(bits) {
                Ok(iv) => {
                    let next = match &self.current {
                        Some(prev) => match prev.intersect(&iv) {
                            Ok(x) => x,
                            Err(e) => return Some(Err(e)),
                        },
                        None => iv,
                    };
                    self.current = Some(next.clone());
                    return Some(Ok(next));
                }
                // A divisor enclosure may straddle zero only because the
                // level is too coarse; retry finer unless this is the last.
                Err(ArithError::DivisorContainsZero) if self.level <= MAX_LEVEL => continue,
                Err(e) => return Some(Err(e)),
            }
        }
    }
}

/// Enclosure of the exact value of `e` with `hi - lo <= precision`.
///
/// Refines along a fixed schedule, so a smaller `precision` always yields a
/// subset of the enclosure returned for a larger one.
pub fn interval_eval(e: &AlgExpr, precision: &Rational) -> Result<RatInterval, ArithError> {
    if precision.signum() <= 0 {
        return Err(ArithError::NonPositivePrecision);
    }
    let mut last = None;
    for iv in e.enclosures() {
        let iv = iv?;
        if iv.width() <= *precision {
            return Ok(iv);
        }
        last = Some(iv);
    }
    match last {
        Some(_) => Err(ArithError::PrecisionNotReached),
        None => Err(ArithError::DivisorContainsZero),
    }
}

/// Decides `e1 < e2` by refining both enclosures until they separate.
///
/// Returns `Ok(true)` when `e1 < e2` is certified, `Ok(false)` when
/// `e1 > e2` is certified, and `Err(Undecided)` when both enclosures shrink
/// below `cfg.max_width` while still overlapping.
pub fn certify_less(e1: &AlgExpr, e2: &AlgExpr, cfg: &RefineConfig) -> Result<bool, ArithError> {
    let mut it1 = e1.enclosures();
    let mut it2 = e2.enclosures();
    loop {
        let a = it1.next().ok_or(ArithError::Undecided)??;
        let b = it2.next().ok_or(ArithError::Undecided)??;
        if a.strictly_below(&b) {
            return Ok(true);
        }
        if b.strictly_below(&a) {
            return Ok(false);
        }
        if a.width() <= cfg.max_width && b.width() <= cfg.max_width {
            return Err(ArithError::Undecided);
        }
    }
}

/// Like [`certify_less`] but also returns the final enclosures.
pub fn compare_with_enclosures(
    e1: &AlgExpr,
    e2: &AlgExpr,
    cfg: &RefineConfig,
) -> Result<(bool, RatInterval, RatInterval), ArithError> {
    let mut it1 = e1.enclosures();
    let mut it2 = e2.enclosures();
    loop {
        let a = it1.next().ok_or(ArithError::Undecided)??;
        let b = it2.next().ok_or(ArithError::Undecided)??;
        if a.strictly_below(&b) {
            return Ok((true, a, b));
        }
        if b.strictly_below(&a) {
            return Ok((false, a, b));
        }
        if a.width() <= cfg.max_width && b.width() <= cfg.max_width {
            return Err(ArithError::Undecided);
        }
    }
}

impl From<Rational> for AlgExpr {
    fn from(r: Rational) -> Self {
        AlgExpr::Rat(r)
    }
}

impl From<QSqrt2> for AlgExpr {
    fn from(q: QSqrt2) -> Self {
        AlgExpr::Quad(q)
    }
}

impl From<i64> for AlgExpr {
    fn from(n: i64) -> Self {
        AlgExpr::int(n)
    }
}

macro_rules! expr_binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl $trait<AlgExpr> for AlgExpr {
            type Output = AlgExpr;
            fn $method(self, rhs: AlgExpr) -> AlgExpr {
                AlgExpr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

expr_binop!(Add, add, Add);
expr_binop!(Sub, sub, Sub);
expr_binop!(Mul, mul, Mul);
expr_binop!(Div, div, Div);

impl Neg for AlgExpr {
    type Output = AlgExpr;
    fn neg(self) -> AlgExpr {
        AlgExpr::Neg(Box::new(self))
    }
}

impl fmt::Display for AlgExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgExpr::Rat(r) => write!(f, "{r}"),
            AlgExpr::Quad(q) if q.is_rational() => write!(f, "{q}"),
            AlgExpr::Quad(q) => write!(f, "({q})"),
            AlgExpr::Add(a, b) => write!(f, "{a} + {b}"),
            AlgExpr::Sub(a, b) => write!(f, "{a} - ({b})"),
            AlgExpr::Mul(a, b) => write!(f, "{}*{}", Paren(a), Paren(b)),
            AlgExpr::Div(a, b) => write!(f, "{}/{}", Paren(a), Paren(b)),
            AlgExpr::Neg(a) => write!(f, "-{}", Paren(a)),
            AlgExpr::Sqrt(a) => write!(f, "sqrt({a})"),
            AlgExpr::Cbrt(a) => write!(f, "cbrt({a})"),
            AlgExpr::Pow(a, e) => write!(f, "{}^{}", Paren(a), e),
        }
    }
}

impl fmt::Debug for AlgExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Paren<'a>(&'a AlgExpr);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            AlgExpr::Add(..) | AlgExpr::Sub(..) | AlgExpr::Neg(..) | AlgExpr::Div(..) => {
                write!(f, "({})", self.0)
            }
            AlgExpr::Rat(r) if !r.is_integer() => write!(f, "({r})"),
            other => write!(f, "{other}"),
        }
    }
}
