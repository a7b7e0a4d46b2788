//! Scalar abstraction shared by formal sums, matrices and representations.
//!
//! Everything that carries coefficients is generic over [`Scalar`]. Exact
//! work uses `BigInt` (integer coefficients, fraction-free elimination) and
//! `BigRational` (representation matrices); the fixed-width and floating
//! implementations exist for quick experiments and cross-checks.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_bigint(v: &BigInt) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_bigint(&BigInt::from(v))
    }

    /// Decimal rendering used in JSON and CSV output.
    fn render(&self) -> String;
}

/// Scalars with division. For integer types the division must be exact
/// wherever it is used (fraction-free elimination guarantees this).
pub trait DivScalar: Scalar + Div<Output = Self> {}

impl<T: Scalar + Div<Output = T>> DivScalar for T {}

macro_rules! int_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn from_bigint(v: &BigInt) -> Self {
                v.to_string().parse().expect("integer coefficient overflow")
            }
            fn from_i64(v: i64) -> Self {
                v as $t
            }
            fn render(&self) -> String {
                self.to_string()
            }
        }
    )*};
}

int_scalar!(i64, i128);

impl Scalar for BigInt {
    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Scalar for BigRational {
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Scalar for Ratio<i64> {
    fn from_bigint(v: &BigInt) -> Self {
        Ratio::from_integer(i64::from_bigint(v))
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Scalar for f64 {
    fn from_bigint(v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Scalar for f32 {
    fn from_bigint(v: &BigInt) -> Self {
        v.to_f32().unwrap_or(f32::NAN)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions_agree() {
        let v = BigInt::from(-17);
        assert_eq!(i64::from_bigint(&v), -17);
        assert_eq!(i128::from_bigint(&v), -17);
        assert_eq!(f64::from_bigint(&v), -17.0);
        assert_eq!(BigRational::from_bigint(&v).render(), "-17");
        assert_eq!(Ratio::<i64>::from_i64(3), Ratio::from_integer(3));
    }
}
