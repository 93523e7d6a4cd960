//! Number types the geometric routines are generic over.
//!
//! Two implementations ship: `f64` for simulation-scale work, where ties and
//! signs are decided at a fixed absolute tolerance, and [`Rational`] for exact
//! oracles, where every comparison is exact.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Exact arbitrary-precision rational.
pub type Rational = BigRational;

/// Absolute tolerance used for argmax ties and torus equality in `f64` mode.
pub const TIE_TOL: f64 = 1e-9;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
    + Send
    + Sync
    + 'static
{
    /// Whether arithmetic and comparisons are exact.
    const EXACT: bool;

    /// Converts a finite float exactly (rationals) or trivially (floats).
    /// Returns `None` for NaN and infinities.
    fn from_float(x: f64) -> Option<Self>;

    fn from_int(x: i64) -> Self;

    fn to_float(&self) -> f64;

    /// Tolerance for deciding ties; zero in exact mode.
    fn tie_tol() -> Self;

    fn abs_val(&self) -> Self;

    fn is_finite_value(&self) -> bool;

    /// `self == other` up to [`Scalar::tie_tol`].
    fn tie_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).abs_val() <= Self::tie_tol()
    }

    /// `self > other` by more than the tie tolerance.
    fn tie_gt(&self, other: &Self) -> bool {
        self.clone() - other.clone() > Self::tie_tol()
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_float(x: f64) -> Option<Self> {
        x.is_finite().then_some(x)
    }

    fn from_int(x: i64) -> Self {
        x as f64
    }

    fn to_float(&self) -> f64 {
        *self
    }

    fn tie_tol() -> Self {
        TIE_TOL
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_float(x: f64) -> Option<Self> {
        BigRational::from_float(x)
    }

    fn from_int(x: i64) -> Self {
        BigRational::from_integer(BigInt::from_i64(x).expect("i64 fits in BigInt"))
    }

    fn to_float(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn tie_tol() -> Self {
        Self::zero()
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn is_finite_value(&self) -> bool {
        true
    }
}

/// Builds a rational `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Converts a float slice into exact rationals. Panics on non-finite input.
pub fn to_rational_vec(xs: &[f64]) -> Vec<Rational> {
    xs.iter()
        .map(|&x| <Rational as Scalar>::from_float(x).expect("finite input"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_ties_use_tolerance() {
        assert!(1.0f64.tie_eq(&(1.0 + 1e-10)));
        assert!(!1.0f64.tie_eq(&(1.0 + 1e-8)));
        assert!((1.0 + 1e-8f64).tie_gt(&1.0));
    }

    #[test]
    fn rational_ties_are_exact() {
        let a = ratio(1, 3);
        let b = ratio(1, 3) + ratio(1, 1_000_000_000_000);
        assert!(!a.tie_eq(&b));
        assert!(b.tie_gt(&a));
        assert_eq!(Rational::from_float(0.5).unwrap(), ratio(1, 2));
        assert!(Rational::from_float(f64::NAN).is_none());
    }
}
