//! Coefficient fields.
//!
//! Everything in the crate is generic over a [`Coeff`] field. The exact
//! instantiation ([`crate::Rational`]) is the one the algorithms are meant
//! for; machine-width rationals and `f64` are provided for experiments and
//! quick arithmetic checks.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A field of coefficients.
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Converts `num / den`; `None` when not representable or `den == 0`.
    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self>;

    fn from_i64(v: i64) -> Self {
        Self::from_fraction(&BigInt::from(v), &BigInt::one()).expect("integer coefficient")
    }

    fn is_negative(&self) -> bool;

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Coeff for BigRational {
    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

macro_rules! machine_ratio {
    ($t:ty) => {
        impl Coeff for Ratio<$t> {
            fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self> {
                let (n, d) = (num.to_i128()?, den.to_i128()?);
                if d == 0 {
                    return None;
                }
                Some(Ratio::new(<$t>::try_from(n).ok()?, <$t>::try_from(d).ok()?))
            }

            fn is_negative(&self) -> bool {
                Signed::is_negative(self)
            }
        }
    };
}

machine_ratio!(i64);
machine_ratio!(i128);

impl Coeff for f64 {
    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(num.to_f64()? / den.to_f64()?)
    }

    fn is_negative(&self) -> bool {
        *self < 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_normalize() {
        let q = BigRational::from_fraction(&BigInt::from(4), &BigInt::from(-6)).unwrap();
        assert_eq!(q.to_string(), "-2/3");
        assert!(Coeff::is_negative(&q));
        assert!(BigRational::from_fraction(&BigInt::from(1), &BigInt::zero()).is_none());
    }

    #[test]
    fn machine_ratio_rejects_overflow() {
        let big = BigInt::from(i64::MAX) * BigInt::from(4);
        assert!(Ratio::<i64>::from_fraction(&big, &BigInt::one()).is_none());
        assert!(Ratio::<i128>::from_fraction(&big, &BigInt::one()).is_some());
    }
}
