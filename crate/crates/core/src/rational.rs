//! Exact rationals used both as coefficients and as exponents (the value
//! group is ℚ), plus the exponent-depth budget shared by lazy operations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// `p/q` form, or just `p` for integers.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact sign as -1, 0 or 1.
pub fn signum(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Floor of a rational as an `i64`, saturating.
pub fn floor_i64(q: &Rational) -> i64 {
    let f = q.floor().to_integer();
    i64::try_from(f).unwrap_or(if q.is_negative() { i64::MIN } else { i64::MAX })
}

pub fn ceil_i64(q: &Rational) -> i64 {
    let c = q.ceil().to_integer();
    i64::try_from(c).unwrap_or(if q.is_negative() { i64::MIN } else { i64::MAX })
}

/// Integer power with a possibly negative exponent. `base` must be nonzero
/// when `exp < 0`.
pub fn pow(base: &Rational, exp: i64) -> Rational {
    let mut acc = one();
    let mut b = if exp < 0 { base.recip() } else { base.clone() };
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    acc
}

/// Exponent depth up to which lazy series are explored before a question is
/// declared undecided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub depth: Rational,
}

impl Budget {
    pub const DEFAULT_DEPTH: i64 = 64;

    pub fn new(depth: Rational) -> Self {
        Budget { depth }
    }

    pub fn from_depth(depth: i64) -> Self {
        Budget { depth: int(depth) }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::from_depth(Self::DEFAULT_DEPTH)
    }
}
