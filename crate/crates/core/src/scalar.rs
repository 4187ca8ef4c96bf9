//! Numeric abstraction shared by the exact (rational) and floating paths.
//!
//! Everything that is a rational function of lambda lengths (flips,
//! simplicial coordinates, h-lengths, cross-ratios) is written once against
//! [`Scalar`] and runs on both `f64` and [`Rational`].

use core::cmp::Ordering;
use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Slack used when classifying the sign of a floating value.
pub const FLOAT_SIGN_SLACK: f64 = 1e-12;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;

    /// Sign with a slack of [`FLOAT_SIGN_SLACK`] for floats; exact for rationals.
    fn sign(&self) -> Ordering;

    fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    fn is_zeroish(&self) -> bool {
        self.sign() == Ordering::Equal
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    /// `true` for exact arithmetic.
    fn is_exact() -> bool;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sign(&self) -> Ordering {
        if *self > FLOAT_SIGN_SLACK {
            Ordering::Greater
        } else if *self < -FLOAT_SIGN_SLACK {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn is_exact() -> bool {
        false
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn sign(&self) -> Ordering {
        if Signed::is_positive(self) {
            Ordering::Greater
        } else if Signed::is_negative(self) {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn is_exact() -> bool {
        true
    }
}

/// `num / den` as a [`Rational`]. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}
