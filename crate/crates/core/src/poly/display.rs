//! Canonical printing: terms in descending lexicographic order of exponent
//! vectors, coefficients as reduced fractions, variables as `x1..xn`.
//! `parse` of the printed form recovers the same term map.

use std::fmt;

use crate::scalar::Coefficient;

use super::Polynomial;

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (index, (exponent, coefficient)) in self.terms().rev().enumerate() {
            let negative = coefficient.is_negative();
            if index == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = coefficient.abs();
            let is_constant_term = exponent.total() == 0;
            if is_constant_term {
                write!(f, "{magnitude}")?;
            } else {
                let mut wrote_factor = false;
                if !magnitude.is_one() {
                    write!(f, "{magnitude}")?;
                    wrote_factor = true;
                }
                for (axis, &e) in exponent.entries().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if wrote_factor {
                        write!(f, "*")?;
                    }
                    write!(f, "x{}", axis + 1)?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                    wrote_factor = true;
                }
            }
        }
        Ok(())
    }
}
