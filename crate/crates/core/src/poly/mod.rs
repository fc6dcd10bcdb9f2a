//! Sparse multivariate polynomials with exact arithmetic and the hyperplane
//! quotient `q = (p - 1) / (s - 1)` where `s = x1 + ... + xn`.

mod display;
mod parse;

pub use parse::{ParseError, ParseErrorKind};

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::exponent::ExponentVector;
use crate::scalar::Coefficient;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("point has {point_len} coordinates but the polynomial has dimension {dimension}")]
    PointLength { point_len: usize, dimension: usize },
}

/// A sparse polynomial: a finite map from nonnegative exponent vectors to
/// nonzero coefficients. The zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<C: Coefficient> {
    dimension: usize,
    terms: BTreeMap<ExponentVector, C>,
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(dimension: usize) -> Self {
        assert!(dimension >= 1, "dimension must be at least 1");
        Polynomial {
            dimension,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dimension: usize, value: C) -> Self {
        let mut p = Self::zero(dimension);
        if !value.is_zero() {
            p.terms.insert(ExponentVector::zeros(dimension), value);
        }
        p
    }

    pub fn one(dimension: usize) -> Self {
        Self::constant(dimension, C::one())
    }

    /// The single variable `x_{axis+1}` (zero-based axis).
    pub fn variable(dimension: usize, axis: usize) -> Self {
        Self::monomial(dimension, ExponentVector::unit(dimension, axis), C::one())
    }

    pub fn monomial(dimension: usize, exponent: ExponentVector, coefficient: C) -> Self {
        let mut p = Self::zero(dimension);
        p.insert_term(exponent, coefficient);
        p
    }

    /// The coordinate sum `x1 + x2 + ... + xn`.
    pub fn coordinate_sum(dimension: usize) -> Self {
        let mut p = Self::zero(dimension);
        for axis in 0..dimension {
            p.insert_term(ExponentVector::unit(dimension, axis), C::one());
        }
        p
    }

    /// Builds a polynomial from raw terms, combining duplicates and dropping
    /// zero coefficients.
    pub fn from_terms<I>(dimension: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, C)>,
    {
        let mut p = Self::zero(dimension);
        for (exponent, coefficient) in terms {
            p.insert_term(exponent, coefficient);
        }
        p
    }

    fn insert_term(&mut self, exponent: ExponentVector, coefficient: C) {
        assert_eq!(
            exponent.dimension(),
            self.dimension,
            "exponent vector length must equal the polynomial dimension"
        );
        assert!(
            exponent.is_nonnegative(),
            "polynomial exponents must be nonnegative"
        );
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + coefficient;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i32> {
        self.terms.keys().map(ExponentVector::total).max()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponent: &ExponentVector) -> Option<&C> {
        self.terms.get(exponent)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_dimension(other)?;
        let mut sum = self.clone();
        for (exponent, coefficient) in &other.terms {
            sum.insert_term(exponent.clone(), coefficient.clone());
        }
        Ok(sum)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_add(&other.negated())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_dimension(other)?;
        let mut product = Self::zero(self.dimension);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                product.insert_term(a.plus(b), ca.clone() * cb.clone());
            }
        }
        Ok(product)
    }

    pub fn negated(&self) -> Self {
        Polynomial {
            dimension: self.dimension,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scaled(&self, factor: &C) -> Self {
        if factor.is_zero() {
            return Self::zero(self.dimension);
        }
        Polynomial {
            dimension: self.dimension,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.clone() * factor.clone()))
                .collect(),
        }
    }

    /// `self - coefficient * x^exponent`.
    pub fn subtract_monomial(&self, exponent: &ExponentVector, coefficient: &C) -> Self {
        let mut result = self.clone();
        result.insert_term(exponent.clone(), -coefficient.clone());
        result
    }

    /// Exact evaluation at a point.
    pub fn evaluate(&self, point: &[C]) -> Result<C, PolyError> {
        if point.len() != self.dimension {
            return Err(PolyError::PointLength {
                point_len: point.len(),
                dimension: self.dimension,
            });
        }
        let mut value = C::zero();
        for (exponent, coefficient) in &self.terms {
            let mut term = coefficient.clone();
            for (axis, &e) in exponent.entries().iter().enumerate() {
                for _ in 0..e {
                    term = term * point[axis].clone();
                }
            }
            value = value + term;
        }
        Ok(value)
    }

    /// Divides `self - 1` by `s - 1` where `s = x1 + ... + xn`, in
    /// lexicographic order with `x1` greatest, so the divisor's leading term
    /// is `x1`. The quotient and remainder are unique under that order and
    /// the remainder contains no monomial divisible by `x1`.
    pub fn divide_by_hyperplane(&self) -> HyperplaneDivision<C> {
        let n = self.dimension;
        let mut f = self.subtract_monomial(&ExponentVector::zeros(n), &C::one());
        let mut quotient = Self::zero(n);
        let mut remainder = Self::zero(n);
        while let Some((lead, coefficient)) = f.terms.last_key_value() {
            let lead = lead.clone();
            let coefficient = coefficient.clone();
            if lead.entry(0) >= 1 {
                let t = lead.down(0);
                quotient.insert_term(t.clone(), coefficient.clone());
                // f -= c * x^t * (s - 1)
                for axis in 0..n {
                    f.insert_term(t.up(axis), -coefficient.clone());
                }
                f.insert_term(t, coefficient);
            } else {
                remainder.insert_term(lead.clone(), coefficient.clone());
                f.terms.remove(&lead);
            }
        }
        HyperplaneDivision {
            quotient,
            remainder,
        }
    }

    /// Membership test for the family `H` of polynomials with nonnegative
    /// coefficients that equal 1 on the hyperplane `x1 + ... + xn = 1`.
    ///
    /// On failure the verdict carries a witness: either a term with a
    /// negative coefficient, or a rational hyperplane point where the
    /// polynomial is not 1 (built from a nonzero remainder term).
    pub fn hyperplane_membership(&self) -> HyperplaneMembership<C> {
        for (exponent, coefficient) in &self.terms {
            if coefficient.is_negative() {
                return HyperplaneMembership::NegativeCoefficient {
                    exponent: exponent.clone(),
                    coefficient: coefficient.clone(),
                };
            }
        }
        let division = self.divide_by_hyperplane();
        if division.remainder.is_zero() {
            return HyperplaneMembership::Member;
        }
        let point = self.off_hyperplane_witness(&division.remainder);
        let value = self
            .evaluate(&point)
            .expect("witness point has the right length");
        HyperplaneMembership::NotOneOnHyperplane { point, value }
    }

    pub fn is_in_h(&self) -> bool {
        matches!(self.hyperplane_membership(), HyperplaneMembership::Member)
    }

    /// Finds a rational hyperplane point where `self != 1`, given the nonzero
    /// remainder of the hyperplane division.
    ///
    /// The remainder is a nonzero polynomial in `x2..xn` and on the
    /// hyperplane `self - 1` agrees with it, so it suffices to find a point
    /// where the remainder is nonzero; a grid with more values per axis than
    /// the degree must contain one.
    fn off_hyperplane_witness(&self, remainder: &Self) -> Vec<C> {
        let n = self.dimension;
        let degree = remainder.degree().unwrap_or(0);
        let values_per_axis = (degree + 1) as usize;
        let free_axes = n - 1;
        let mut grid_index = vec![0usize; free_axes];
        loop {
            let mut point = vec![C::zero(); n];
            for axis in 0..free_axes {
                point[axis + 1] = C::from_int(grid_index[axis] as i64);
            }
            let value = remainder
                .evaluate(&point)
                .expect("grid point has the right length");
            if !value.is_zero() {
                let mut tail_sum = C::zero();
                for coordinate in point.iter().skip(1) {
                    tail_sum = tail_sum + coordinate.clone();
                }
                point[0] = C::one() - tail_sum;
                return point;
            }
            // advance the odometer
            let mut axis = 0;
            loop {
                if axis == free_axes {
                    unreachable!("a nonzero polynomial cannot vanish on the whole grid");
                }
                grid_index[axis] += 1;
                if grid_index[axis] <= values_per_axis {
                    break;
                }
                grid_index[axis] = 0;
                axis += 1;
            }
        }
    }

    fn check_dimension(&self, other: &Self) -> Result<(), PolyError> {
        if self.dimension != other.dimension {
            return Err(PolyError::DimensionMismatch {
                left: self.dimension,
                right: other.dimension,
            });
        }
        Ok(())
    }
}

/// Result of dividing `p - 1` by `s - 1`: `(s - 1) * quotient + remainder = p - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneDivision<C: Coefficient> {
    pub quotient: Polynomial<C>,
    pub remainder: Polynomial<C>,
}

/// Verdict of [`Polynomial::hyperplane_membership`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HyperplaneMembership<C: Coefficient> {
    Member,
    NegativeCoefficient {
        exponent: ExponentVector,
        coefficient: C,
    },
    NotOneOnHyperplane {
        point: Vec<C>,
        value: C,
    },
}

impl<C: Coefficient> HyperplaneMembership<C> {
    pub fn is_member(&self) -> bool {
        matches!(self, HyperplaneMembership::Member)
    }
}

impl<C: Coefficient> std::fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Polynomial[{}]({})", self.dimension, self)
    }
}

impl<C: Coefficient> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        self.checked_add(rhs)
            .expect("polynomial dimensions must match")
    }
}

impl<C: Coefficient> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.checked_sub(rhs)
            .expect("polynomial dimensions must match")
    }
}

impl<C: Coefficient> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.checked_mul(rhs)
            .expect("polynomial dimensions must match")
    }
}

impl<C: Coefficient> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        self.negated()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Poly, Rational};

    fn parse(text: &str, dimension: usize) -> Poly {
        Poly::parse(text, dimension).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn binomial_square() {
        let p = parse("x+y", 2);
        let square = &p * &p;
        assert_eq!(square, parse("x^2 + 2*x*y + y^2", 2));
        assert_eq!(square.term_count(), 3);
    }

    #[test]
    fn additive_inverse_cancels() {
        let p = parse("2*x^2 - 3/4*y + 1", 2);
        let sum = p.checked_add(&p.scaled(&rat(-1, 1))).unwrap();
        assert!(sum.is_zero());
        assert_eq!(sum.degree(), None);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let p = parse("x", 2);
        let q = parse("x", 3);
        assert_eq!(
            p.checked_add(&q),
            Err(PolyError::DimensionMismatch { left: 2, right: 3 })
        );
        assert!(p.checked_mul(&q).is_err());
    }

    #[test]
    fn term_count_examples() {
        assert_eq!(parse("x^3 + 3*x*y + y^3", 2).term_count(), 3);
        assert_eq!(Poly::zero(3).term_count(), 0);
        let cubic = parse("x^3 + 3*x^2*z + 3*x*z^2 + z^3 + 3*x*y + 3*y*z + y^3", 3);
        assert_eq!(cubic.term_count(), 7);
    }

    #[test]
    fn multiplying_by_coordinate_sum_bounds_terms() {
        let s = Poly::coordinate_sum(3);
        let p = parse("x*y^2*z", 3);
        let product = &s * &p;
        assert_eq!(product.term_count(), 3 * p.term_count());
        let q = parse("x + y + z + 1", 3);
        assert!((&s * &q).term_count() <= 3 * q.term_count());
    }

    #[test]
    fn divide_coordinate_sum_itself() {
        let p = parse("x+y", 2);
        let division = p.divide_by_hyperplane();
        assert_eq!(division.quotient, Poly::one(2));
        assert!(division.remainder.is_zero());
    }

    #[test]
    fn divide_cubic_with_sharp_bound() {
        let p = parse("x^3 + 3*x*y + y^3", 2);
        let division = p.divide_by_hyperplane();
        assert_eq!(division.quotient, parse("x^2 - x*y + y^2 + x + y + 1", 2));
        assert!(division.remainder.is_zero());
    }

    #[test]
    fn divide_leaves_remainder_free_of_first_variable() {
        let p = parse("x^2", 2);
        let division = p.divide_by_hyperplane();
        assert!(!division.remainder.is_zero());
        for (exponent, _) in division.remainder.terms() {
            assert_eq!(exponent.entry(0), 0);
        }
    }

    #[test]
    fn division_round_trip_identity() {
        let s_minus_1 = parse("x + y + z - 1", 3);
        for text in [
            "x^3 + 3*x^2*z + 3*x*z^2 + z^3 + 3*x*y + 3*y*z + y^3",
            "x^2*y - 7/3*z + 5",
            "x*y*z",
            "1",
            "0",
        ] {
            let p = parse(text, 3);
            let division = p.divide_by_hyperplane();
            let rebuilt = &(&s_minus_1 * &division.quotient) + &division.remainder;
            let p_minus_1 = p.subtract_monomial(&ExponentVector::zeros(3), &rat(1, 1));
            assert_eq!(rebuilt, p_minus_1, "round trip failed for {text}");
        }
    }

    #[test]
    fn membership_accepts_whitney_style_examples() {
        assert!(parse("x + y + x*z + y*z + z^2", 3).is_in_h());
        let cubic = parse("x^3 + 3*x^2*z + 3*x*z^2 + z^3 + 3*x*y + 3*y*z + y^3", 3);
        assert!(cubic.is_in_h());
    }

    #[test]
    fn membership_witness_for_pure_power() {
        let p = parse("x^2", 2);
        match p.hyperplane_membership() {
            HyperplaneMembership::NotOneOnHyperplane { point, value } => {
                assert_eq!(point, vec![rat(0, 1), rat(1, 1)]);
                assert_ne!(value, rat(1, 1));
                assert_eq!(value, rat(0, 1));
            }
            other => panic!("expected a hyperplane witness, got {other:?}"),
        }
    }

    #[test]
    fn membership_witness_for_negative_coefficient() {
        let p = parse("x + y - x*y", 2);
        match p.hyperplane_membership() {
            HyperplaneMembership::NegativeCoefficient {
                exponent,
                coefficient,
            } => {
                assert_eq!(exponent, ExponentVector::from(vec![1, 1]));
                assert_eq!(coefficient, rat(-1, 1));
            }
            other => panic!("expected a negative-coefficient witness, got {other:?}"),
        }
    }

    #[test]
    fn evaluate_exactly() {
        let f = parse("x^3 + 3*x*y + y^3", 2);
        let half = rat(1, 2);
        assert_eq!(f.evaluate(&[half.clone(), half]).unwrap(), rat(1, 1));

        let s = Poly::coordinate_sum(3);
        assert_eq!(
            s.evaluate(&[rat(1, 3), rat(5, 3), rat(-1, 1)]).unwrap(),
            rat(1, 1)
        );

        let zero = Poly::zero(2);
        assert_eq!(zero.evaluate(&[rat(7, 2), rat(-4, 9)]).unwrap(), rat(0, 1));

        assert!(f.evaluate(&[rat(1, 1)]).is_err());
    }

    #[test]
    fn substitution_reassembles_the_three_variable_cubic() {
        // the quotient of the substituted cubic is the sharp cubic's quotient
        // and (s - 1) * q + 1 recovers the degree-3 polynomial in three
        // variables.
        let u = parse("x + z", 3);
        let v = parse("y", 3);
        let one = Poly::one(3);
        let q_sub = &(&(&(&(&(&u * &u) - &(&u * &v)) + &(&v * &v)) + &u) + &v) + &one;
        let s_minus_1 = parse("x + y + z - 1", 3);
        let rebuilt = &(&s_minus_1 * &q_sub) + &one;
        let cubic = parse("x^3 + 3*x^2*z + 3*x*z^2 + z^3 + 3*x*y + 3*y*z + y^3", 3);
        assert_eq!(rebuilt, cubic);
        // The quotient itself has ten monomials.
        assert_eq!(q_sub.term_count(), 10);
        assert_eq!(cubic.divide_by_hyperplane().quotient, q_sub);
    }
}
