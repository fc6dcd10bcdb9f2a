//! Parser for the polynomial text grammar:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := [coeff] ('*'? factor)*
//! factor := var ('^' uint)?
//! coeff  := int | int '/' uint
//! var    := 'x' uint | 'x' | 'y' | 'z' | 'w'
//! ```
//!
//! Variables are canonically `x1..xn`; the single-letter aliases `x,y,z,w`
//! stand for `x1..x4` and are accepted only when the dimension is at most 4.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::exponent::ExponentVector;
use crate::scalar::Coefficient;

use super::Polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at position {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    DimensionZero,
    UnexpectedChar(char),
    UnexpectedEnd,
    InvalidNumber,
    ZeroDenominator,
    VariableIndexZero,
    VariableOutOfRange { index: usize, dimension: usize },
    AliasNeedsSmallDimension { alias: char, dimension: usize },
    ExponentTooLarge,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::DimensionZero => write!(f, "dimension must be at least 1"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character '{c}'"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::InvalidNumber => write!(f, "invalid number"),
            ParseErrorKind::ZeroDenominator => write!(f, "denominator must be nonzero"),
            ParseErrorKind::VariableIndexZero => write!(f, "variable indices start at 1"),
            ParseErrorKind::VariableOutOfRange { index, dimension } => {
                write!(
                    f,
                    "variable index {index} out of range for dimension {dimension}"
                )
            }
            ParseErrorKind::AliasNeedsSmallDimension { alias, dimension } => {
                write!(
                    f,
                    "alias '{alias}' is only accepted for dimension <= 4 (got {dimension})"
                )
            }
            ParseErrorKind::ExponentTooLarge => write!(f, "exponent too large"),
        }
    }
}

impl<C: Coefficient> Polynomial<C> {
    /// Parses `text` as a polynomial in `dimension` variables.
    pub fn parse(text: &str, dimension: usize) -> Result<Self, ParseError> {
        if dimension == 0 {
            return Err(ParseError {
                position: 0,
                kind: ParseErrorKind::DimensionZero,
            });
        }
        let mut parser = Parser {
            chars: text.char_indices().collect(),
            cursor: 0,
            dimension,
        };
        parser.expression()
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    cursor: usize,
    dimension: usize,
}

impl Parser {
    fn expression<C: Coefficient>(&mut self) -> Result<Polynomial<C>, ParseError> {
        let mut polynomial = Polynomial::zero(self.dimension);
        self.skip_whitespace();
        let mut negative = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let (exponent, coefficient) = self.term::<C>()?;
            let signed = if negative { -coefficient } else { coefficient };
            polynomial.insert_term(exponent, signed);
            self.skip_whitespace();
            match self.peek() {
                None => return Ok(polynomial),
                Some('+') => {
                    self.bump();
                    negative = false;
                }
                Some('-') => {
                    self.bump();
                    negative = true;
                }
                Some(c) => return Err(self.error_here(ParseErrorKind::UnexpectedChar(c))),
            }
        }
    }

    fn term<C: Coefficient>(&mut self) -> Result<(ExponentVector, C), ParseError> {
        self.skip_whitespace();
        let mut coefficient = None;
        let mut negative = false;
        if matches!(self.peek(), Some('-' | '+')) {
            negative = self.peek() == Some('-');
            self.bump();
            self.skip_whitespace();
        }
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let numer = self.integer()?;
            self.skip_whitespace();
            let value = if self.peek() == Some('/') {
                self.bump();
                self.skip_whitespace();
                let denom_pos = self.position();
                let denom = self.integer()?;
                if denom == BigInt::from(0) {
                    return Err(ParseError {
                        position: denom_pos,
                        kind: ParseErrorKind::ZeroDenominator,
                    });
                }
                C::from_fraction(numer, denom)
            } else {
                C::from_fraction(numer, BigInt::one())
            };
            coefficient = Some(value);
        }
        let mut exponents = vec![0i64; self.dimension];
        let mut saw_factor = false;
        loop {
            self.skip_whitespace();
            let explicit_star = self.peek() == Some('*');
            if explicit_star {
                self.bump();
                self.skip_whitespace();
            }
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() => {
                    let (axis, power) = self.factor()?;
                    exponents[axis] += i64::from(power);
                    saw_factor = true;
                }
                Some(c) if explicit_star => {
                    return Err(self.error_here(ParseErrorKind::UnexpectedChar(c)));
                }
                None if explicit_star => {
                    return Err(self.error_here(ParseErrorKind::UnexpectedEnd));
                }
                _ => break,
            }
        }
        if coefficient.is_none() && !saw_factor {
            return Err(match self.peek() {
                Some(c) => self.error_here(ParseErrorKind::UnexpectedChar(c)),
                None => self.error_here(ParseErrorKind::UnexpectedEnd),
            });
        }
        let mut entries = Vec::with_capacity(self.dimension);
        for e in exponents {
            if e > i64::from(i32::MAX) {
                return Err(self.error_here(ParseErrorKind::ExponentTooLarge));
            }
            entries.push(e as i32);
        }
        let coefficient = coefficient.unwrap_or_else(C::one);
        let coefficient = if negative { -coefficient } else { coefficient };
        Ok((ExponentVector::new(entries), coefficient))
    }

    /// One variable with an optional `^uint` power; returns (axis, power).
    fn factor(&mut self) -> Result<(usize, u32), ParseError> {
        let start = self.position();
        let letter = self.peek().expect("caller checked for a letter");
        self.bump();
        let axis = match letter {
            'x' if self.peek().is_some_and(|c| c.is_ascii_digit()) => {
                let index = self.small_uint()?;
                if index == 0 {
                    return Err(ParseError {
                        position: start,
                        kind: ParseErrorKind::VariableIndexZero,
                    });
                }
                let index = index as usize;
                if index > self.dimension {
                    return Err(ParseError {
                        position: start,
                        kind: ParseErrorKind::VariableOutOfRange {
                            index,
                            dimension: self.dimension,
                        },
                    });
                }
                index - 1
            }
            'x' | 'y' | 'z' | 'w' => {
                if self.dimension > 4 {
                    return Err(ParseError {
                        position: start,
                        kind: ParseErrorKind::AliasNeedsSmallDimension {
                            alias: letter,
                            dimension: self.dimension,
                        },
                    });
                }
                let index = match letter {
                    'x' => 1,
                    'y' => 2,
                    'z' => 3,
                    _ => 4,
                };
                if index > self.dimension {
                    return Err(ParseError {
                        position: start,
                        kind: ParseErrorKind::VariableOutOfRange {
                            index,
                            dimension: self.dimension,
                        },
                    });
                }
                index - 1
            }
            other => {
                return Err(ParseError {
                    position: start,
                    kind: ParseErrorKind::UnexpectedChar(other),
                })
            }
        };
        let power = if self.peek() == Some('^') {
            self.bump();
            self.skip_whitespace();
            if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                return Err(match self.peek() {
                    Some(c) => self.error_here(ParseErrorKind::UnexpectedChar(c)),
                    None => self.error_here(ParseErrorKind::UnexpectedEnd),
                });
            }
            self.small_uint()?
        } else {
            1
        };
        Ok((axis, power))
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let start = self.position();
        let mut digits = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if digits.is_empty() {
            return Err(match self.peek() {
                Some(c) => self.error_here(ParseErrorKind::UnexpectedChar(c)),
                None => self.error_here(ParseErrorKind::UnexpectedEnd),
            });
        }
        digits.parse::<BigInt>().map_err(|_| ParseError {
            position: start,
            kind: ParseErrorKind::InvalidNumber,
        })
    }

    fn small_uint(&mut self) -> Result<u32, ParseError> {
        let start = self.position();
        let mut value: u64 = 0;
        let mut saw_digit = false;
        while let Some(c) = self.peek() {
            if let Some(d) = c.to_digit(10) {
                saw_digit = true;
                value = value * 10 + u64::from(d);
                if value > u64::from(u32::MAX) {
                    return Err(ParseError {
                        position: start,
                        kind: ParseErrorKind::ExponentTooLarge,
                    });
                }
                self.bump();
            } else {
                break;
            }
        }
        if !saw_digit {
            return Err(ParseError {
                position: start,
                kind: ParseErrorKind::InvalidNumber,
            });
        }
        Ok(value as u32)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.cursor).map(|&(_, c)| c)
    }

    fn bump(&mut self) {
        self.cursor += 1;
    }

    fn position(&self) -> usize {
        self.chars
            .get(self.cursor)
            .map(|&(i, _)| i)
            .unwrap_or_else(|| {
                self.chars
                    .last()
                    .map(|&(i, c)| i + c.len_utf8())
                    .unwrap_or(0)
            })
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.position(),
            kind,
        }
    }

    fn skip_whitespace(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Poly, Rational};

    fn ev(entries: &[i32]) -> ExponentVector {
        ExponentVector::from(entries)
    }

    fn rat(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn parses_the_sharp_cubic() {
        let p = Poly::parse("x1^3 + 3*x1*x2 + x2^3", 2).unwrap();
        assert_eq!(p.term_count(), 3);
        assert_eq!(p.coefficient(&ev(&[3, 0])), Some(&rat(1)));
        assert_eq!(p.coefficient(&ev(&[1, 1])), Some(&rat(3)));
        assert_eq!(p.coefficient(&ev(&[0, 3])), Some(&rat(1)));
        // aliases parse to the same polynomial
        assert_eq!(Poly::parse("x^3 + 3x y + y^3", 2).unwrap(), p);
    }

    #[test]
    fn parses_zero_and_combines_like_terms() {
        assert!(Poly::parse("0", 3).unwrap().is_zero());
        assert!(Poly::parse("x - x", 2).unwrap().is_zero());
        let p = Poly::parse("1/2*x + 1/2*x", 1).unwrap();
        assert_eq!(p, Poly::parse("x", 1).unwrap());
    }

    #[test]
    fn parses_five_term_degree_two_example() {
        let p = Poly::parse("x + y + x*z + y*z + z^2", 3).unwrap();
        assert_eq!(p.term_count(), 5);
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn parses_rational_and_negative_coefficients() {
        let p = Poly::parse("-3/4*x^2 + y - 7", 2).unwrap();
        assert_eq!(
            p.coefficient(&ev(&[2, 0])),
            Some(&Rational::new((-3).into(), 4.into()))
        );
        assert_eq!(p.coefficient(&ev(&[0, 0])), Some(&rat(-7)));
    }

    #[test]
    fn reports_positions_for_syntax_errors() {
        let err = Poly::parse("x1 + ^2", 2).unwrap_err();
        assert_eq!(err.position, 5);
        assert_eq!(err.kind, ParseErrorKind::UnexpectedChar('^'));

        let err = Poly::parse("x1 +", 2).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedEnd);

        let err = Poly::parse("1/0", 2).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ZeroDenominator);
        assert_eq!(err.position, 2);
    }

    #[test]
    fn rejects_out_of_range_variables() {
        let err = Poly::parse("x3", 2).unwrap_err();
        assert_eq!(
            err.kind,
            ParseErrorKind::VariableOutOfRange {
                index: 3,
                dimension: 2
            }
        );
        let err = Poly::parse("w", 3).unwrap_err();
        assert_eq!(
            err.kind,
            ParseErrorKind::VariableOutOfRange {
                index: 4,
                dimension: 3
            }
        );
        let err = Poly::parse("x0", 2).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::VariableIndexZero);
        let err = Poly::parse("y", 5).unwrap_err();
        assert_eq!(
            err.kind,
            ParseErrorKind::AliasNeedsSmallDimension {
                alias: 'y',
                dimension: 5
            }
        );
        let err = Poly::parse("x", 0).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DimensionZero);
    }

    #[test]
    fn canonical_indexed_variables_work_in_high_dimension() {
        let p = Poly::parse("x1*x5^2 + x3", 5).unwrap();
        assert_eq!(p.coefficient(&ev(&[1, 0, 0, 0, 2])), Some(&rat(1)));
        assert_eq!(p.coefficient(&ev(&[0, 0, 1, 0, 0])), Some(&rat(1)));
    }
}
