use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{ArithError, Rational};

/// Closed interval `[lo, hi]` with rational endpoints.
///
/// Every operation returns an enclosure of the exact result: if `x` lies in
/// `a` and `y` in `b`, then `x op y` lies in `a op b`.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct RatInterval {
    lo: Rational,
    hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, ArithError> {
        if lo > hi {
            return Err(ArithError::EmptyInterval);
        }
        Ok(RatInterval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) * Rational::new(1, 2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    /// `self` lies inside the open interval `(lo, hi)`.
    pub fn is_strictly_within(&self, lo: &Rational, hi: &Rational) -> bool {
        lo < &self.lo && &self.hi < hi
    }

    pub fn is_subset_of(&self, other: &RatInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Every point of `self` is strictly below every point of `other`.
    pub fn strictly_below(&self, other: &RatInterval) -> bool {
        self.hi < other.lo
    }

    /// Intersection of two enclosures of the same quantity.
    pub fn intersect(&self, other: &RatInterval) -> Result<RatInterval, ArithError> {
        RatInterval::new(
            self.lo.clone().max(other.lo.clone()),
            self.hi.clone().min(other.hi.clone()),
        )
    }

    /// Widens the endpoints outward to multiples of `2^-bits`.
    pub fn round_out(&self, bits: u32) -> RatInterval {
        RatInterval {
            lo: self.lo.floor_dyadic(bits),
            hi: self.hi.ceil_dyadic(bits),
        }
    }

    pub fn add(&self, rhs: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }

    pub fn sub(&self, rhs: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, rhs: &RatInterval) -> RatInterval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().cloned().expect("nonempty");
        let hi = products.iter().max().cloned().expect("nonempty");
        RatInterval { lo, hi }
    }

    pub fn recip(&self) -> Result<RatInterval, ArithError> {
        if self.contains_zero() {
            return Err(ArithError::DivisorContainsZero);
        }
        Ok(RatInterval {
            lo: self.hi.recip()?,
            hi: self.lo.recip()?,
        })
    }

    pub fn div(&self, rhs: &RatInterval) -> Result<RatInterval, ArithError> {
        Ok(self.mul(&rhs.recip()?))
    }

    /// Integer power; even powers of intervals straddling zero start at 0.
    pub fn powi(&self, e: u32) -> RatInterval {
        if e == 0 {
            return RatInterval::point(Rational::one());
        }
        let a = self.lo.pow(e);
        let b = self.hi.pow(e);
        if e % 2 == 1 {
            return RatInterval { lo: a, hi: b };
        }
        if self.contains_zero() {
            RatInterval {
                lo: Rational::zero(),
                hi: a.max(b),
            }
        } else {
            RatInterval {
                lo: a.clone().min(b.clone()),
                hi: a.max(b),
            }
        }
    }

    /// Enclosure of the square root with endpoints accurate to `2^-bits`.
    /// Negative parts of the interval are clipped; an interval entirely
    /// below zero is an error.
    pub fn sqrt(&self, bits: u32) -> Result<RatInterval, ArithError> {
        if self.hi.signum() < 0 {
            return Err(ArithError::NegativeSqrt);
        }
        let lo = if self.lo.signum() <= 0 {
            Rational::zero()
        } else {
            root_floor(&self.lo, 2, bits)
        };
        let hi = root_ceil(&self.hi, 2, bits);
        Ok(RatInterval { lo, hi })
    }

    /// Enclosure of the real cube root with endpoints accurate to `2^-bits`.
    pub fn cbrt(&self, bits: u32) -> RatInterval {
        let lo = signed_cbrt_floor(&self.lo, bits);
        let hi = -signed_cbrt_floor(&-&self.hi, bits);
        RatInterval { lo, hi }
    }
}

/// Largest multiple `m` of `2^-bits` with `m^k <= x`, for `x >= 0`.
///
/// Works on integers: find the largest `n` with `n^k <= x * 2^(k*bits)` by
/// bisection on `n`, comparing exact rationals.
fn root_floor(x: &Rational, k: u32, bits: u32) -> Rational {
    debug_assert!(x.signum() >= 0);
    let scale = BigInt::one() << bits;
    // target = x * scale^k as an exact rational; n^k <= target.
    let target = x * &Rational::from_bigint(num_traits::pow(scale.clone(), k as usize));
    let t_floor = target.floor();
    // n^k <= target  <=>  n^k <= floor(target) for integer n.
    let n = integer_root_floor(&t_floor, k);
    Rational::from_bigs(n, scale).expect("nonzero")
}

/// Smallest multiple `m` of `2^-bits` with `m^k >= x`, for `x >= 0`.
fn root_ceil(x: &Rational, k: u32, bits: u32) -> Rational {
    let lo = root_floor(x, k, bits);
    if lo.pow(k) == *x {
        lo
    } else {
        lo + Rational::pow2_neg(bits)
    }
}

fn signed_cbrt_floor(x: &Rational, bits: u32) -> Rational {
    if x.signum() >= 0 {
        root_floor(x, 3, bits)
    } else {
        -root_ceil(&-x, 3, bits)
    }
}

/// `floor(n^(1/k))` for `n >= 0`, by bisection.
fn integer_root_floor(n: &BigInt, k: u32) -> BigInt {
    if n.is_zero() {
        return BigInt::zero();
    }
    let mut lo = BigInt::zero();
    let mut hi = BigInt::one() << (n.bits() / k as u64 + 1);
    // Invariant: lo^k <= n < hi^k.
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        if num_traits::pow(mid.clone(), k as usize) <= *n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            self.lo.to_decimal_trunc(12),
            self.hi.to_decimal_round(12)
        )
    }
}

impl fmt::Debug for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}
