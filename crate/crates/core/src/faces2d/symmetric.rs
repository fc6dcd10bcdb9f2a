//! Symmetric 2-dimensional diagrams: sign patterns on the triangle
//! `H_d = {(a,b,c) >= 0 : a+b+c = d}`, their symmetric nodes, one-row views,
//! and the two-case view-deficit dichotomy.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{DumpPoint, NewtonDiagram, Sign};
use crate::exponent::ExponentVector;
use crate::poly::Polynomial;
use crate::scalar::Coefficient;

use super::Faces2dError;

/// A sign function on `H_d`. The multiplier in the symmetric picture is
/// `x1 + x2 + x3` with no constant term, so a point one level up is a node
/// exactly when its three downward neighbors carry a nonzero value and not
/// both signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricDiagram2D {
    degree: u32,
    values: BTreeMap<ExponentVector, Sign>,
}

/// A single row of signs: the view of a symmetric diagram along an edge.
/// Nodes are adjacent pairs not of the shape `(0,0)`, `(P,N)` or `(N,P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricRow {
    degree: u32,
    values: Vec<Sign>,
}

/// Outcome of the view-deficit dichotomy for a nonempty symmetric diagram:
/// a three-node diagram is a single point, and anything bigger has a view
/// hiding at least two nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetricDichotomy {
    Empty,
    SinglePoint,
    Deficit {
        axes: (usize, usize),
        deficit: usize,
    },
}

impl SymmetricDiagram2D {
    /// Builds a symmetric diagram from explicit signs on `H_degree`.
    pub fn from_signs<I>(degree: u32, values: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, Sign)>,
    {
        let mut map = BTreeMap::new();
        for (point, sign) in values {
            assert_eq!(point.dimension(), 3, "symmetric diagrams live on triples");
            assert!(point.is_nonnegative(), "H_d points are nonnegative");
            assert_eq!(point.total(), degree as i32, "H_d points sum to the degree");
            if sign.is_nonzero() {
                map.insert(point, sign);
            }
        }
        SymmetricDiagram2D {
            degree,
            values: map,
        }
    }

    /// The sign pattern of a homogeneous polynomial in three variables.
    pub fn from_homogeneous<C: Coefficient>(
        polynomial: &Polynomial<C>,
    ) -> Result<Self, Faces2dError> {
        if polynomial.dimension() != 3 {
            return Err(Faces2dError::NotThreeVariables {
                dimension: polynomial.dimension(),
            });
        }
        let Some(degree) = polynomial.degree() else {
            return Err(Faces2dError::NotHomogeneous);
        };
        if polynomial.terms().any(|(e, _)| e.total() != degree) {
            return Err(Faces2dError::NotHomogeneous);
        }
        Ok(Self::from_signs(
            degree as u32,
            polynomial.terms().map(|(e, c)| (e.clone(), Sign::of(c))),
        ))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn support(&self) -> impl Iterator<Item = (&ExponentVector, Sign)> {
        self.values.iter().map(|(p, &s)| (p, s))
    }

    pub fn sign(&self, point: &ExponentVector) -> Sign {
        self.values.get(point).copied().unwrap_or(Sign::Zero)
    }

    /// True when the node rule fires at a point of `H_{d+1}`: the three
    /// downward values include a nonzero one and not both `P` and `N`.
    fn is_node(&self, point: &ExponentVector) -> bool {
        let mut seen_p = false;
        let mut seen_n = false;
        for axis in 0..3 {
            let below = point.down(axis);
            if !below.is_nonnegative() {
                continue;
            }
            match self.sign(&below) {
                Sign::P => seen_p = true,
                Sign::N => seen_n = true,
                Sign::Zero => {}
            }
        }
        (seen_p || seen_n) && !(seen_p && seen_n)
    }

    /// Number of symmetric nodes; they all lie on `H_{d+1}`.
    pub fn node_count(&self) -> usize {
        let level = self.degree as i32 + 1;
        let mut count = 0;
        for a in 0..=level {
            for b in 0..=(level - a) {
                let c = level - a - b;
                if self.is_node(&ExponentVector::new(vec![a, b, c])) {
                    count += 1;
                }
            }
        }
        count
    }

    /// The view along `(from, towards)` (zero-based axes in `{0,1,2}`): a
    /// single row indexed by the merged exponent, each entry the sign at the
    /// smallest `from`-exponent on its line.
    pub fn view(&self, from: usize, towards: usize) -> Result<SymmetricRow, Faces2dError> {
        if from == towards || from > 2 || towards > 2 {
            return Err(Faces2dError::InvalidEdge {
                k: from,
                m: towards,
                dimension: 3,
            });
        }
        let mut row: Vec<Option<(i32, Sign)>> = vec![None; self.degree as usize + 1];
        for (point, sign) in self.support() {
            let a = point.entry(from);
            let merged = (a + point.entry(towards)) as usize;
            match &mut row[merged] {
                slot @ None => *slot = Some((a, sign)),
                Some((best, best_sign)) => {
                    if a < *best {
                        *best = a;
                        *best_sign = sign;
                    }
                }
            }
        }
        Ok(SymmetricRow {
            degree: self.degree,
            values: row
                .into_iter()
                .map(|slot| slot.map_or(Sign::Zero, |(_, s)| s))
                .collect(),
        })
    }

    /// The dichotomy: three nodes means a single nonzero point; more nodes
    /// means some view hides at least two. Returns the best deficit found.
    pub fn view_deficit(&self) -> Result<SymmetricDichotomy, Faces2dError> {
        if self.values.is_empty() {
            return Ok(SymmetricDichotomy::Empty);
        }
        let own = self.node_count();
        if own == 3 {
            if self.support_len() != 1 {
                return Err(Faces2dError::NotSimple {
                    position: self.values.keys().next().expect("nonempty").clone(),
                });
            }
            return Ok(SymmetricDichotomy::SinglePoint);
        }
        let mut best: Option<((usize, usize), usize)> = None;
        for from in 0..3 {
            for towards in 0..3 {
                if from == towards {
                    continue;
                }
                let seen = self.view(from, towards)?.node_count();
                let deficit = own.saturating_sub(seen);
                if best.is_none_or(|(_, d)| deficit > d) {
                    best = Some(((from, towards), deficit));
                }
            }
        }
        let (axes, deficit) = best.expect("at least one view exists");
        Ok(SymmetricDichotomy::Deficit { axes, deficit })
    }

    /// Serialization: the dump point list plus the `degree` field and the
    /// symmetric node positions (which carry no sink/source kind).
    pub fn dump(&self) -> SymmetricDiagramDump {
        let level = self.degree as i32 + 1;
        let mut nodes = Vec::new();
        for a in 0..=level {
            for b in 0..=(level - a) {
                let point = ExponentVector::new(vec![a, b, level - a - b]);
                if self.is_node(&point) {
                    nodes.push(point.entries().to_vec());
                }
            }
        }
        SymmetricDiagramDump {
            degree: self.degree,
            points: self
                .support()
                .map(|(p, sign)| DumpPoint {
                    alpha: p.entries().to_vec(),
                    sign,
                })
                .collect(),
            nodes,
        }
    }

    pub fn from_dump(dump: &SymmetricDiagramDump) -> Self {
        Self::from_signs(
            dump.degree,
            dump.points
                .iter()
                .map(|p| (ExponentVector::new(p.alpha.clone()), p.sign)),
        )
    }

    /// De-homogenization onto the first two coordinates, flipping the sign
    /// of points with odd third exponent. Sinks and sources of the result
    /// match the symmetric nodes on examples.
    pub fn to_alternating_2d(&self) -> NewtonDiagram {
        NewtonDiagram::from_support(
            2,
            self.support().map(|(point, sign)| {
                let flat = ExponentVector::new(vec![point.entry(0), point.entry(1)]);
                let flipped = if point.entry(2) % 2 == 1 {
                    sign.flipped()
                } else {
                    sign
                };
                (flat, flipped)
            }),
        )
    }
}

impl SymmetricRow {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn sign_at(&self, merged: i32) -> Sign {
        if merged < 0 || merged as usize >= self.values.len() {
            Sign::Zero
        } else {
            self.values[merged as usize]
        }
    }

    pub fn signs(&self) -> &[Sign] {
        &self.values
    }

    /// Adjacent-pair node count: pairs `(w[u-1], w[u])` not of the shape
    /// `(0,0)`, `(P,N)` or `(N,P)`.
    pub fn node_count(&self) -> usize {
        let mut count = 0;
        for u in 0..=(self.values.len() as i32) {
            let left = self.sign_at(u - 1);
            let right = self.sign_at(u);
            let excluded = matches!(
                (left, right),
                (Sign::Zero, Sign::Zero) | (Sign::P, Sign::N) | (Sign::N, Sign::P)
            );
            if !excluded {
                count += 1;
            }
        }
        count
    }
}

/// Serialization of a symmetric diagram: the dump points plus the degree
/// and the symmetric node positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricDiagramDump {
    pub degree: u32,
    pub points: Vec<DumpPoint>,
    pub nodes: Vec<Vec<i32>>,
}

/// Pair-rule node count of a 1-dimensional diagram read as a symmetric row.
pub fn row_node_count(diagram: &NewtonDiagram) -> usize {
    assert_eq!(
        diagram.dimension(),
        1,
        "row node counting is for 1-dimensional diagrams"
    );
    let top = diagram.top_total().unwrap_or(-1);
    let values: Vec<Sign> = (0..=top.max(-1))
        .map(|t| diagram.sign(&ExponentVector::new(vec![t])))
        .collect();
    SymmetricRow {
        degree: top.max(0) as u32,
        values,
    }
    .node_count()
}
