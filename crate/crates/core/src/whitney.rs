//! Construction of degree-extremal polynomials by repeated top-term moves,
//! the one-term-per-degree classifier, and the degree bound report.
//!
//! Starting from `s = x1 + ... + xn` and repeatedly replacing a term `m` of
//! maximal degree by `s * m` produces degree-`d` members of `H` with exactly
//! `d(n-1) + 1` monomials, which meet the degree bound with equality.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use thiserror::Error;

use crate::diagram::NewtonDiagram;
use crate::exponent::ExponentVector;
use crate::{Poly, Rational, RationalExt};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WhitneyError {
    #[error("polynomial is not in H: {reason}")]
    NotInH { reason: String },
    #[error("{exponent:?} is not a maximal-degree term of the polynomial")]
    NotMaximalTerm { exponent: ExponentVector },
    #[error("construction needs dimension >= 2, got {dimension}")]
    DimensionTooSmall { dimension: usize },
    #[error("construction needs degree >= 1, got {degree}")]
    DegreeTooSmall { degree: u32 },
    #[error("polynomial is constant; no degree bound applies")]
    ConstantPolynomial,
    #[error("degree bound violated: degree {degree} exceeds {bound} (n={dimension}, N={terms}); this contradicts the bound theorem")]
    BoundViolated {
        dimension: usize,
        degree: i32,
        terms: usize,
        bound: Rational,
    },
}

/// How `generate` picks the maximal-degree term to move at each step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chooser {
    /// The lexicographically largest maximal-degree exponent; reproduces the
    /// worked three-variable example.
    LexLargest,
    /// Uniform choice driven by a seeded generator; deterministic per seed.
    Seeded(u64),
}

impl std::str::FromStr for Chooser {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        if text == "lex" {
            return Ok(Chooser::LexLargest);
        }
        if let Some(seed) = text.strip_prefix("seed:") {
            return seed
                .parse::<u64>()
                .map(Chooser::Seeded)
                .map_err(|_| format!("invalid seed in chooser '{text}'"));
        }
        Err(format!(
            "unknown chooser '{text}' (expected 'lex' or 'seed:<u64>')"
        ))
    }
}

/// The construction transcript: the moved monomials and the final
/// polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct WhitneyTrace {
    pub dimension: usize,
    pub moves: Vec<ExponentVector>,
    pub polynomial: Poly,
}

/// Replaces the full term of `p` at a maximal-degree exponent by `s` times
/// that term. The result stays in `H`, gains one degree, and gains exactly
/// `n - 1` terms.
pub fn whitney_step(p: &Poly, target: &ExponentVector) -> Result<Poly, WhitneyError> {
    require_in_h(p)?;
    let degree = p.degree().ok_or(WhitneyError::ConstantPolynomial)?;
    let coefficient = match p.coefficient(target) {
        Some(c) if target.total() == degree => c.clone(),
        _ => {
            return Err(WhitneyError::NotMaximalTerm {
                exponent: target.clone(),
            })
        }
    };
    let n = p.dimension();
    let monomial = Poly::monomial(n, target.clone(), coefficient.clone());
    let s = Poly::coordinate_sum(n);
    let moved = p
        .subtract_monomial(target, &coefficient)
        .checked_add(&s.checked_mul(&monomial).expect("same dimension"))
        .expect("same dimension");
    debug_assert_eq!(moved.degree(), Some(degree + 1));
    debug_assert_eq!(moved.term_count(), p.term_count() + n - 1);
    Ok(moved)
}

/// Builds a degree-`degree` member of `H` with `degree * (n-1) + 1` terms by
/// repeated top-term moves starting from the coordinate sum.
pub fn generate(
    dimension: usize,
    degree: u32,
    chooser: &Chooser,
) -> Result<WhitneyTrace, WhitneyError> {
    if dimension < 2 {
        return Err(WhitneyError::DimensionTooSmall { dimension });
    }
    if degree < 1 {
        return Err(WhitneyError::DegreeTooSmall { degree });
    }
    let mut rng = match chooser {
        Chooser::LexLargest => None,
        Chooser::Seeded(seed) => Some(StdRng::seed_from_u64(*seed)),
    };
    let mut polynomial = Poly::coordinate_sum(dimension);
    let mut moves = Vec::new();
    for _ in 1..degree {
        let top = polynomial.degree().expect("nonzero by construction");
        let candidates: Vec<ExponentVector> = polynomial
            .terms()
            .filter(|(e, _)| e.total() == top)
            .map(|(e, _)| e.clone())
            .collect();
        let target = match &mut rng {
            None => candidates
                .last()
                .expect("a maximal-degree term exists")
                .clone(),
            Some(rng) => candidates[rng.random_range(0..candidates.len())].clone(),
        };
        polynomial = whitney_step(&polynomial, &target)?;
        moves.push(target);
    }
    Ok(WhitneyTrace {
        dimension,
        moves,
        polynomial,
    })
}

/// True when `p` lies in `H` and its quotient has exactly one nonzero term
/// in every degree `0 .. deg p - 1`; these are exactly the polynomials the
/// top-term construction can produce.
pub fn is_sharp_whitney(p: &Poly) -> bool {
    let Some(degree) = p.degree() else {
        return false;
    };
    if degree < 1 || !p.is_in_h() {
        return false;
    }
    let quotient = p.divide_by_hyperplane().quotient;
    let mut per_degree = vec![0usize; degree as usize];
    for (exponent, _) in quotient.terms() {
        let level = exponent.total();
        if level < 0 || level >= degree {
            return false;
        }
        per_degree[level as usize] += 1;
    }
    per_degree.iter().all(|&count| count == 1)
}

/// The degree bound verdict for a member of `H`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeBoundReport {
    pub dimension: usize,
    pub degree: i32,
    pub term_count: usize,
    /// `2N - 3` for two variables, `(N - 1)/(n - 1)` above; printed as an
    /// exact fraction.
    pub bound: String,
    pub tight: bool,
}

/// Checks `p in H`, computes the degree bound for its dimension and term
/// count, and reports whether it is attained. A bound violation is an error:
/// it would contradict the bound theorem.
pub fn degree_bound_report(p: &Poly) -> Result<DegreeBoundReport, WhitneyError> {
    require_in_h(p)?;
    let dimension = p.dimension();
    if dimension < 2 {
        return Err(WhitneyError::DimensionTooSmall { dimension });
    }
    let degree = p
        .degree()
        .filter(|&d| d > 0)
        .ok_or(WhitneyError::ConstantPolynomial)?;
    let terms = p.term_count();
    let bound = degree_bound(dimension, terms);
    if Rational::from_int(i64::from(degree)) > bound {
        return Err(WhitneyError::BoundViolated {
            dimension,
            degree,
            terms,
            bound,
        });
    }
    let tight = Rational::from_int(i64::from(degree)) == bound;
    Ok(DegreeBoundReport {
        dimension,
        degree,
        term_count: terms,
        bound: bound.to_string(),
        tight,
    })
}

/// `2N - 3` for `n = 2` and `(N - 1)/(n - 1)` for `n >= 3`.
pub fn degree_bound(dimension: usize, term_count: usize) -> Rational {
    assert!(
        dimension >= 2,
        "no degree bound exists for a single variable"
    );
    if dimension == 2 {
        Rational::from_int(2 * term_count as i64 - 3)
    } else {
        Rational::new(
            (term_count as i64 - 1).into(),
            (dimension as i64 - 1).into(),
        )
    }
}

/// The Newton diagram of the quotient of a member of `H`.
pub fn quotient_diagram(p: &Poly) -> NewtonDiagram {
    NewtonDiagram::from_quotient(&p.divide_by_hyperplane().quotient)
}

fn require_in_h(p: &Poly) -> Result<(), WhitneyError> {
    match p.hyperplane_membership() {
        crate::HyperplaneMembership::Member => Ok(()),
        verdict => Err(WhitneyError::NotInH {
            reason: format!("{verdict:?}"),
        }),
    }
}
