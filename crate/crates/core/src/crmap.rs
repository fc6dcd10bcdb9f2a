//! Monomial maps between unit balls, reduced to real polynomial data via
//! `x_j = |z_j|^2`, with the properness test and the degree bound report.
//!
//! Components carry their squared moduli as exact rationals: a component
//! `c * z^beta` contributes `|c|^2 * x^beta` to the squared norm, and phases
//! never matter, so storing `|c|^2` keeps everything exact.

use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::exponent::ExponentVector;
use crate::whitney::degree_bound;
use crate::{HyperplaneMembership, Poly, Rational, RationalExt};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CrmapError {
    #[error("a monomial map needs at least one component")]
    NoComponents,
    #[error("the degree bound needs a source dimension of at least 2, got {dimension}")]
    DimensionTooSmall { dimension: usize },
    #[error("component {index} has nonpositive squared modulus {value}")]
    NonpositiveCoefficient { index: usize, value: Rational },
    #[error("component {index} has a negative exponent")]
    NegativeExponent { index: usize },
    #[error("map is not proper: {reason}")]
    NotProper { reason: String },
    #[error("degree bound violated: degree {degree} exceeds {bound} (n={dimension}, N={components}); this contradicts the bound theorem")]
    BoundViolated {
        dimension: usize,
        degree: i32,
        components: usize,
        bound: Rational,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// One component of a monomial map: the squared modulus of its coefficient
/// and its exponent in `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct MapComponent {
    pub squared_modulus: Rational,
    pub exponent: ExponentVector,
}

/// A map between balls whose coordinate functions are single monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialMap {
    dimension: usize,
    components: Vec<MapComponent>,
}

impl MonomialMap {
    pub fn new(dimension: usize, components: Vec<MapComponent>) -> Result<Self, CrmapError> {
        if components.is_empty() {
            return Err(CrmapError::NoComponents);
        }
        for (index, component) in components.iter().enumerate() {
            if !component.squared_modulus.is_positive() {
                return Err(CrmapError::NonpositiveCoefficient {
                    index,
                    value: component.squared_modulus.clone(),
                });
            }
            if component.exponent.dimension() != dimension {
                return Err(CrmapError::Parse {
                    line: index + 1,
                    message: "component exponent has the wrong length".into(),
                });
            }
            if !component.exponent.is_nonnegative() {
                return Err(CrmapError::NegativeExponent { index });
            }
        }
        Ok(MonomialMap {
            dimension,
            components,
        })
    }

    /// Parses the one-component-per-line format `<rational> : <monomial-in-z>`.
    /// Blank lines and `#` comments are ignored; the source dimension is the
    /// largest variable index used unless `dimension` pins it.
    pub fn parse(text: &str, dimension: Option<usize>) -> Result<Self, CrmapError> {
        type RawComponent = (usize, Rational, Vec<(usize, u32)>);
        let mut raw: Vec<RawComponent> = Vec::new();
        let mut max_index = 0usize;
        for (line_index, line) in text.lines().enumerate() {
            let line_number = line_index + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (value_text, monomial_text) = trimmed.split_once(':').ok_or(CrmapError::Parse {
                line: line_number,
                message: "expected '<rational> : <monomial-in-z>'".into(),
            })?;
            let value = parse_rational(value_text.trim()).map_err(|message| CrmapError::Parse {
                line: line_number,
                message,
            })?;
            let powers =
                parse_z_monomial(monomial_text.trim()).map_err(|message| CrmapError::Parse {
                    line: line_number,
                    message,
                })?;
            for &(index, _) in &powers {
                max_index = max_index.max(index);
            }
            raw.push((line_number, value, powers));
        }
        if raw.is_empty() {
            return Err(CrmapError::NoComponents);
        }
        let dimension = dimension.unwrap_or(max_index.max(1));
        if max_index > dimension {
            return Err(CrmapError::Parse {
                line: 0,
                message: format!("variable index {max_index} exceeds dimension {dimension}"),
            });
        }
        let components = raw
            .into_iter()
            .map(|(_, value, powers)| {
                let mut entries = vec![0i32; dimension];
                for (index, power) in powers {
                    entries[index - 1] += power as i32;
                }
                MapComponent {
                    squared_modulus: value,
                    exponent: ExponentVector::new(entries),
                }
            })
            .collect();
        Self::new(dimension, components)
    }

    /// Lifts a polynomial with nonnegative coefficients to the monomial map
    /// whose squared norm it is: one component per term, the coefficient
    /// stored as its own squared modulus.
    pub fn from_hyperplane_polynomial(p: &Poly) -> Result<Self, CrmapError> {
        let components: Vec<MapComponent> = p
            .terms()
            .map(|(exponent, coefficient)| MapComponent {
                squared_modulus: coefficient.clone(),
                exponent: exponent.clone(),
            })
            .collect();
        Self::new(p.dimension(), components)
    }

    pub fn source_dimension(&self) -> usize {
        self.dimension
    }

    /// Number of coordinate functions `N`.
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MapComponent] {
        &self.components
    }

    /// Degree of the map: the largest component degree in `z`.
    pub fn degree(&self) -> i32 {
        self.components
            .iter()
            .map(|c| c.exponent.total())
            .max()
            .unwrap_or(0)
    }

    /// The real polynomial `p(x) = sum |c_j|^2 x^beta_j` under
    /// `x_j = |z_j|^2`; like terms combine, so it has at most `N` terms.
    pub fn squared_norm(&self) -> Poly {
        Poly::from_terms(
            self.dimension,
            self.components
                .iter()
                .map(|c| (c.exponent.clone(), c.squared_modulus.clone())),
        )
    }

    /// Properness: the squared norm is 1 on the unit sphere, i.e. its real
    /// reduction lies in `H`.
    pub fn is_proper(&self) -> bool {
        self.squared_norm().is_in_h()
    }

    /// The degree bound verdict for a proper map. A bound violation is an
    /// error: it would contradict the bound theorem.
    pub fn corollary_report(&self) -> Result<CorollaryReport, CrmapError> {
        if self.dimension < 2 {
            return Err(CrmapError::DimensionTooSmall {
                dimension: self.dimension,
            });
        }
        match self.squared_norm().hyperplane_membership() {
            HyperplaneMembership::Member => {}
            verdict => {
                return Err(CrmapError::NotProper {
                    reason: format!("{verdict:?}"),
                });
            }
        }
        let dimension = self.dimension;
        let components = self.component_count();
        let degree = self.degree();
        let bound = degree_bound(dimension, components);
        if Rational::from_int(i64::from(degree)) > bound {
            return Err(CrmapError::BoundViolated {
                dimension,
                degree,
                components,
                bound,
            });
        }
        let tight = Rational::from_int(i64::from(degree)) == bound;
        Ok(CorollaryReport {
            source_dimension: dimension,
            component_count: components,
            degree,
            bound: bound.to_string(),
            holds: true,
            tight,
        })
    }
}

/// Degree bound report for a proper monomial map.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorollaryReport {
    pub source_dimension: usize,
    pub component_count: usize,
    pub degree: i32,
    pub bound: String,
    pub holds: bool,
    pub tight: bool,
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    let (numer_text, denom_text) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let numer: num_bigint::BigInt = numer_text
        .parse()
        .map_err(|_| format!("invalid rational '{text}'"))?;
    let denom: num_bigint::BigInt = match denom_text {
        Some(d) => d
            .parse()
            .map_err(|_| format!("invalid rational '{text}'"))?,
        None => 1.into(),
    };
    if denom == 0.into() {
        return Err("denominator must be nonzero".into());
    }
    Ok(Rational::new(numer, denom))
}

/// Parses `1` or a product of `z` factors such as `z1^2*z2` or `z z2`.
fn parse_z_monomial(text: &str) -> Result<Vec<(usize, u32)>, String> {
    if text == "1" {
        return Ok(Vec::new());
    }
    let mut powers = Vec::new();
    let mut chars = text.chars().peekable();
    loop {
        while matches!(chars.peek(), Some(c) if c.is_whitespace() || *c == '*') {
            chars.next();
        }
        let Some(c) = chars.next() else { break };
        if c != 'z' {
            return Err(format!("expected 'z', found '{c}'"));
        }
        let mut index_digits = String::new();
        while matches!(chars.peek(), Some(c) if c.is_ascii_digit()) {
            index_digits.push(chars.next().expect("peeked"));
        }
        let index: usize = if index_digits.is_empty() {
            1
        } else {
            index_digits
                .parse()
                .map_err(|_| "invalid variable index".to_string())?
        };
        if index == 0 {
            return Err("variable indices start at 1".into());
        }
        let mut power = 1u32;
        if matches!(chars.peek(), Some('^')) {
            chars.next();
            let mut power_digits = String::new();
            while matches!(chars.peek(), Some(c) if c.is_ascii_digit()) {
                power_digits.push(chars.next().expect("peeked"));
            }
            power = power_digits
                .parse()
                .map_err(|_| "invalid exponent".to_string())?;
        }
        powers.push((index, power));
    }
    if powers.is_empty() {
        return Err("empty monomial".into());
    }
    Ok(powers)
}
