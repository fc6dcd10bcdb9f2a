//! Integer lattice points used both as monomial exponents and as diagram
//! coordinates.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A point of the integer lattice, one entry per variable.
///
/// Polynomials only ever store componentwise nonnegative vectors; diagram
/// queries walk the full lattice, so negative entries are legal here. The
/// derived `Ord` is lexicographic with the first variable most significant,
/// which is also the monomial order used by the hyperplane division.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<i32>);

impl ExponentVector {
    pub fn new(entries: Vec<i32>) -> Self {
        ExponentVector(entries)
    }

    /// The origin of the lattice in `dimension` variables.
    pub fn zeros(dimension: usize) -> Self {
        ExponentVector(vec![0; dimension])
    }

    /// The `axis`-th unit vector (zero-based).
    pub fn unit(dimension: usize, axis: usize) -> Self {
        assert!(
            axis < dimension,
            "axis {axis} out of range for dimension {dimension}"
        );
        let mut entries = vec![0; dimension];
        entries[axis] = 1;
        ExponentVector(entries)
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    /// The coordinate sum, i.e. the total degree of the associated monomial.
    pub fn total(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn entry(&self, axis: usize) -> i32 {
        self.0[axis]
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// The point with the `axis`-th entry decremented.
    pub fn down(&self, axis: usize) -> Self {
        assert!(
            axis < self.0.len(),
            "axis {axis} out of range for dimension {}",
            self.0.len()
        );
        let mut entries = self.0.clone();
        entries[axis] -= 1;
        ExponentVector(entries)
    }

    /// The point with the `axis`-th entry incremented.
    pub fn up(&self, axis: usize) -> Self {
        assert!(
            axis < self.0.len(),
            "axis {axis} out of range for dimension {}",
            self.0.len()
        );
        let mut entries = self.0.clone();
        entries[axis] += 1;
        ExponentVector(entries)
    }

    /// Componentwise sum; both points must live in the same dimension.
    pub fn plus(&self, other: &ExponentVector) -> Self {
        assert_eq!(self.0.len(), other.0.len(), "dimension mismatch");
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Entries reordered so that entry `i` of the result is entry `perm[i]`
    /// of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.0.len());
        ExponentVector(perm.iter().map(|&i| self.0[i]).collect())
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i32>> for ExponentVector {
    fn from(entries: Vec<i32>) -> Self {
        ExponentVector(entries)
    }
}

// consistent with the derived `Ord`, which compares the entry slices
impl std::borrow::Borrow<[i32]> for ExponentVector {
    fn borrow(&self) -> &[i32] {
        &self.0
    }
}

impl From<&[i32]> for ExponentVector {
    fn from(entries: &[i32]) -> Self {
        ExponentVector(entries.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(entries: &[i32]) -> ExponentVector {
        ExponentVector::from(entries)
    }

    #[test]
    fn down_decrements_one_axis() {
        assert_eq!(ev(&[2, 1, 0]).down(0), ev(&[1, 1, 0]));
        assert_eq!(ev(&[0, 0]).down(1), ev(&[0, -1]));
        assert_eq!(ev(&[1, 1]).down(0).down(0), ev(&[-1, 1]));
    }

    #[test]
    fn total_is_entry_sum() {
        assert_eq!(ev(&[2, -1, 3]).total(), 4);
        assert_eq!(ExponentVector::zeros(4).total(), 0);
    }

    #[test]
    fn order_is_lexicographic_first_variable_greatest() {
        assert!(ev(&[1, 0]) > ev(&[0, 2]));
        assert!(ev(&[1, 1]) > ev(&[1, 0]));
        assert!(ev(&[2, 1]) > ev(&[2, 0]));
    }

    #[test]
    #[should_panic(expected = "axis 2 out of range")]
    fn down_rejects_bad_axis() {
        ev(&[0, 0]).down(2);
    }
}
