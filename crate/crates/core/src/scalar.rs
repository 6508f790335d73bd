//! A minimal field abstraction so that the same recursions run on `f64` and
//! on exact rationals.

use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn as_f64(&self) -> f64;
    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn as_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn as_f64(&self) -> f64 {
        rat_to_f64(self)
    }
}

/// `p/q` as an exact rational.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Nearest-ish `f64` for a big rational, robust to numerators and
/// denominators beyond the `f64` range.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Fall back to scaling by powers of two.
    let n = r.numer().abs();
    let d = r.denom().abs();
    let shift = n.bits() as i64 - d.bits() as i64;
    let (n2, d2) = if shift > 0 {
        (n, d << (shift as usize))
    } else {
        (n << ((-shift) as usize), d)
    };
    let q = BigRational::new(n2, d2).to_f64().unwrap_or(1.0);
    let mag = q * libm::exp2(shift as f64);
    if r.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Exact binary expansion of a finite `f64` as a rational.
pub fn f64_to_rat(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// `p/q` formatting that always includes the denominator.
pub fn rat_string(r: &BigRational) -> alloc::string::String {
    alloc::format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn huge_rational_converts() {
        let big = BigInt::from(10).pow(400u32);
        let r = BigRational::new(big.clone() * 3, big);
        assert!((rat_to_f64(&r) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn formatting_keeps_denominator() {
        assert_eq!(rat_string(&rat(4, 2)), "2/1");
        assert_eq!(rat_string(&rat(-5, 4)), "-5/4");
    }
}
