//! Coefficient scalars for polynomial arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

/// Scalar type a [`Polynomial`](crate::Polynomial) can carry as coefficients.
///
/// Everything the toolkit proves is decided by exact sign tests, so the
/// rational implementation is the one every verdict runs on; `f64` is
/// available for quick approximate evaluation only.
pub trait Coefficient: Signed + Clone + PartialEq + fmt::Debug + fmt::Display {
    /// The value `numer / denom` in this scalar type.
    ///
    /// `denom` is nonzero by the time this is called; the rational
    /// implementation is exact, the float one rounds.
    fn from_fraction(numer: BigInt, denom: BigInt) -> Self;

    fn from_int(value: i64) -> Self {
        Self::from_fraction(BigInt::from(value), BigInt::from(1))
    }
}

impl Coefficient for BigRational {
    fn from_fraction(numer: BigInt, denom: BigInt) -> Self {
        BigRational::new(numer, denom)
    }
}

impl Coefficient for f64 {
    fn from_fraction(numer: BigInt, denom: BigInt) -> Self {
        numer.to_f64().unwrap_or(f64::NAN) / denom.to_f64().unwrap_or(f64::NAN)
    }
}
