use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ArithError, Rational};

/// An element `rat + irr * sqrt(2)` of the quadratic field Q(sqrt 2).
///
/// The representation is canonical: two elements are equal as real numbers
/// iff both coordinates agree, so derived `Eq`/`Hash` are exact.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    pub rat: Rational,
    pub irr: Rational,
}

impl QSqrt2 {
    pub fn new(rat: Rational, irr: Rational) -> Self {
        QSqrt2 { rat, irr }
    }

    pub fn zero() -> Self {
        QSqrt2::default()
    }

    pub fn one() -> Self {
        QSqrt2::from_rational(Rational::one())
    }

    pub fn sqrt2() -> Self {
        QSqrt2::new(Rational::zero(), Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        QSqrt2 {
            rat: r,
            irr: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        QSqrt2::from_rational(Rational::from_int(n))
    }

    /// `a + b sqrt2` for small integers.
    pub fn ints(a: i64, b: i64) -> Self {
        QSqrt2::new(Rational::from_int(a), Rational::from_int(b))
    }

    /// `(a + b sqrt2) / d` for small integers.
    pub fn frac(a: i64, b: i64, d: i64) -> Self {
        QSqrt2::new(Rational::new(a, d), Rational::new(b, d))
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn conj(&self) -> Self {
        QSqrt2::new(self.rat.clone(), -&self.irr)
    }

    /// Field norm `rat^2 - 2 irr^2`; zero only for the zero element.
    pub fn norm(&self) -> Rational {
        self.rat.square() - Rational::from_int(2) * self.irr.square()
    }

    /// Exact sign of the real number `rat + irr*sqrt2`, without floating point.
    pub fn signum(&self) -> i32 {
        let a = self.rat.signum();
        let b = self.irr.signum();
        if b == 0 {
            return a;
        }
        if a == 0 || a == b {
            return b;
        }
        // Opposite signs: compare rat^2 against 2 irr^2.
        let n = self.norm().signum();
        if a > 0 {
            n
        } else {
            -n
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// Absolute value as a real number (flips the whole element).
    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(QSqrt2::new(&self.rat / &n, -(&self.irr / &n)))
    }

    pub fn checked_div(&self, rhs: &QSqrt2) -> Result<Self, ArithError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QSqrt2::new(&self.rat * r, &self.irr * r)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QSqrt2::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Rational bracket `[lo, hi]` of the value, derived from a dyadic
    /// bracket of sqrt2 with `bits` bits of precision.
    pub fn bracket(&self, bits: u32) -> (Rational, Rational) {
        let (slo, shi) = sqrt2_bracket(bits);
        if self.irr.signum() >= 0 {
            (&self.rat + &self.irr * &slo, &self.rat + &self.irr * &shi)
        } else {
            (&self.rat + &self.irr * &shi, &self.rat + &self.irr * &slo)
        }
    }

    /// Greatest integer `<= self`.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.rat.floor();
        }
        // Irrational values are never integers, so the bracket eventually
        // falls strictly between two consecutive integers.
        let mut bits = 16;
        loop {
            let (lo, hi) = self.bracket(bits);
            let f = lo.floor();
            if hi.floor() == f {
                debug_assert!((self - &QSqrt2::from_rational(Rational::from_bigint(f.clone()))).signum() >= 0);
                return f;
            }
            bits *= 2;
        }
    }

    /// Least integer `>= self`.
    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Largest rational `r <= self` on the grid of multiples of `2^-bits`.
    pub fn lower_dyadic(&self, bits: u32) -> Rational {
        let scale = QSqrt2::from_rational(Rational::from_bigint(BigInt::one() << bits));
        let n = (self * &scale).floor();
        Rational::from_bigs(n, BigInt::one() << bits).expect("nonzero scale")
    }

    /// Lossy conversion for display.
    pub fn to_f64(&self) -> f64 {
        self.rat.to_f64() + self.irr.to_f64() * std::f64::consts::SQRT_2
    }
}

/// Dyadic bracket `lo <= sqrt2 <= hi` with `hi - lo <= 2^-bits`.
pub fn sqrt2_bracket(bits: u32) -> (Rational, Rational) {
    let scale = BigInt::one() << bits;
    // floor(sqrt(2 * 4^bits)) via integer square root.
    let n = (BigInt::from(2) * &scale * &scale).sqrt();
    let lo = Rational::from_bigs(n.clone(), scale.clone()).expect("nonzero");
    let hi = Rational::from_bigs(n + 1, scale).expect("nonzero");
    (lo, hi)
}

impl PartialOrd for QSqrt2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt2 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl From<Rational> for QSqrt2 {
    fn from(r: Rational) -> Self {
        QSqrt2::from_rational(r)
    }
}

impl From<i64> for QSqrt2 {
    fn from(n: i64) -> Self {
        QSqrt2::from_int(n)
    }
}

impl fmt::Display for QSqrt2 {
    /// Renders in the input syntax: `a`, `b*sqrt2`, or `a + b*sqrt2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            return write!(f, "{}", self.rat);
        }
        if self.rat.is_zero() {
            return write!(f, "{}*sqrt2", self.irr);
        }
        if self.irr.signum() < 0 {
            write!(f, "{} - {}*sqrt2", self.rat, -&self.irr)
        } else {
            write!(f, "{} + {}*sqrt2", self.rat, self.irr)
        }
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl Serialize for QSqrt2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QSqrt2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        super::parse_qsqrt2(&s).map_err(serde::de::Error::custom)
    }
}

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.rat, -self.irr)
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-&self.rat, -&self.irr)
    }
}

impl Add<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.rat + &rhs.rat, &self.irr + &rhs.irr)
    }
}

impl Sub<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.rat - &rhs.rat, &self.irr - &rhs.irr)
    }
}

impl Mul<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: &QSqrt2) -> QSqrt2 {
        let two = Rational::from_int(2);
        QSqrt2::new(
            &self.rat * &rhs.rat + two * (&self.irr * &rhs.irr),
            &self.rat * &rhs.irr + &self.irr * &rhs.rat,
        )
    }
}

macro_rules! owned_variants {
    ($trait:ident, $method:ident) => {
        impl $trait<QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $method(self, rhs: QSqrt2) -> QSqrt2 {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $method(self, rhs: &QSqrt2) -> QSqrt2 {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<QSqrt2> for &QSqrt2 {
            type Output = QSqrt2;
            fn $method(self, rhs: QSqrt2) -> QSqrt2 {
                $trait::$method(self, &rhs)
            }
        }
    };
}

owned_variants!(Add, add);
owned_variants!(Sub, sub);
owned_variants!(Mul, mul);

impl AddAssign<&QSqrt2> for QSqrt2 {
    fn add_assign(&mut self, rhs: &QSqrt2) {
        self.rat += &rhs.rat;
        self.irr += &rhs.irr;
    }
}

impl SubAssign<&QSqrt2> for QSqrt2 {
    fn sub_assign(&mut self, rhs: &QSqrt2) {
        self.rat -= &rhs.rat;
        self.irr -= &rhs.irr;
    }
}

impl MulAssign<&QSqrt2> for QSqrt2 {
    fn mul_assign(&mut self, rhs: &QSqrt2) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_from_examples() {
        let a = QSqrt2::ints(2, 1);
        assert_eq!(&a * &a, QSqrt2::ints(6, 4));
        assert_eq!(QSqrt2::ints(1, 1) * QSqrt2::ints(-1, 1), QSqrt2::one());
        assert_eq!(a.pow(3), QSqrt2::ints(20, 14));
    }

    #[test]
    fn signs() {
        assert_eq!(QSqrt2::zero().signum(), 0);
        assert_eq!(QSqrt2::ints(-1, 1).signum(), 1);
        assert_eq!(QSqrt2::ints(1, -1).signum(), -1);
        assert_eq!(QSqrt2::ints(3, -2).signum(), 1);
        let d = QSqrt2::ints(112, 64) - QSqrt2::ints(192, 128);
        assert_eq!(d, QSqrt2::ints(-80, -64));
        assert_eq!(d.signum(), -1);
    }

    #[test]
    fn floors() {
        assert_eq!(QSqrt2::sqrt2().floor(), BigInt::from(1));
        assert_eq!(QSqrt2::ints(2, 1).floor(), BigInt::from(3));
        assert_eq!(QSqrt2::ints(-2, -1).floor(), BigInt::from(-4));
        assert_eq!(QSqrt2::from_int(-3).floor(), BigInt::from(-3));
        assert_eq!(QSqrt2::ints(-2, -1).ceil(), BigInt::from(-3));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(QSqrt2::zero().inv().is_err());
        assert!(QSqrt2::one().checked_div(&QSqrt2::zero()).is_err());
    }

    #[test]
    fn conjugate_inverse() {
        let a = QSqrt2::ints(3, -5);
        let inv = a.inv().unwrap();
        assert_eq!(&a * &inv, QSqrt2::one());
        let expected = QSqrt2::new(Rational::new(3, 9 - 50), Rational::new(5, 9 - 50));
        assert_eq!(inv, expected);
    }

    #[test]
    fn display_uses_input_syntax() {
        assert_eq!(QSqrt2::ints(2, 1).to_string(), "2 + 1*sqrt2");
        assert_eq!(QSqrt2::frac(1, -3, 4).to_string(), "1/4 - 3/4*sqrt2");
        assert_eq!(QSqrt2::ints(0, 1).to_string(), "1*sqrt2");
        assert_eq!(QSqrt2::from_int(7).to_string(), "7");
    }

    #[test]
    fn lower_dyadic_is_below() {
        let x = QSqrt2::frac(-1, 1, 4);
        let r = x.lower_dyadic(30);
        assert!(QSqrt2::from_rational(r.clone()) <= x);
        assert!(x < QSqrt2::from_rational(r + Rational::pow2_neg(30)));
    }
}
