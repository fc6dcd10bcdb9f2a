//! Exact computation with Newton diagrams of polynomials constant on a
//! hyperplane.
//!
//! The toolkit works with polynomials `p` in `n` variables that have
//! nonnegative coefficients and equal 1 whenever `x1 + ... + xn = 1` (the
//! family we call `H`). For such `p` the quotient `q = (p - 1) / (s - 1)`,
//! `s = x1 + ... + xn`, is again a polynomial, and the sign pattern of `q`
//! on the integer lattice — its Newton diagram — controls how few monomials
//! `p` can have for a given degree. The crates here compute these diagrams,
//! classify their sinks, sources, corners, edges and faces, build the
//! degree-extremal examples, reduce monomial sphere maps to the same real
//! data, and exhaustively verify the node-count bounds at desk scale.
//!
//! Core arithmetic is generic over the [`Coefficient`] scalar. Every verdict
//! the toolkit produces is a statement about exact signs, so the rational
//! aliases below are what all checking code uses; the `f64` lane exists for
//! quick approximate evaluation only.

pub mod crmap;
pub mod diagram;
pub mod exponent;
pub mod faces2d;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod whitney;

pub use exponent::ExponentVector;
pub use poly::{HyperplaneDivision, HyperplaneMembership, ParseError, PolyError, Polynomial};
pub use scalar::Coefficient;

/// Exact rational scalar used by all theorem-checking code.
pub type Rational = num_rational::BigRational;

/// Polynomial over exact rationals; the default working type.
pub type Poly = Polynomial<Rational>;

/// Polynomial over `f64`, for approximate evaluation only.
pub type PolyF64 = Polynomial<f64>;

/// Helper for rational construction in examples and tests.
pub trait RationalExt {
    fn from_int(value: i64) -> Rational;
}

impl RationalExt for Rational {
    fn from_int(value: i64) -> Rational {
        Rational::from_integer(value.into())
    }
}
