//! Newton diagrams: the sign pattern of a quotient polynomial on the integer
//! lattice, with sink/source classification, the geometric point taxonomy,
//! faces, views, overhang and outside-edge checks.

mod view;

pub use view::{Overhang, ViewError};

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::exponent::ExponentVector;
use crate::poly::Polynomial;
use crate::scalar::Coefficient;

/// Sign of a diagram point. `Zero` is the default off the support and is
/// never stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "P")]
    P,
    #[serde(rename = "N")]
    N,
    #[serde(skip)]
    Zero,
}

impl Sign {
    pub fn of<C: Coefficient>(value: &C) -> Sign {
        if value.is_positive() {
            Sign::P
        } else if value.is_negative() {
            Sign::N
        } else {
            Sign::Zero
        }
    }

    pub fn is_nonzero(self) -> bool {
        self != Sign::Zero
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::P => Sign::N,
            Sign::N => Sign::P,
            Sign::Zero => Sign::Zero,
        }
    }

    pub fn glyph(self) -> char {
        match self {
            Sign::P => 'P',
            Sign::N => 'N',
            Sign::Zero => '.',
        }
    }
}

/// Whether a node forces a positive (`Sink`) or negative (`Source`)
/// coefficient at its position in `p - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Sink,
    Source,
}

/// Geometric class of a lattice point, read off the point's value and the
/// number of nonzero downward neighbors when the diagram is pictured as a
/// solid made of simplices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Geometry {
    BottomCorner,
    TopCorner,
    VerticalEdge,
    HorizontalEdge,
    VerticalFacial,
    HorizontalFacial,
    Other,
}

/// A classified node: its position, kind, and geometric class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub position: ExponentVector,
    pub kind: NodeKind,
    pub geometry: Geometry,
}

/// A maximal connected piece of the diagram surface inside one admissible
/// 2-plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub kind: FaceKind,
    pub points: Vec<ExponentVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceKind {
    /// Plane spanned by two variable axes (zero-based), all other
    /// coordinates fixed.
    Vertical { axes: (usize, usize) },
    /// Plane of constant total degree with all but three coordinates fixed.
    Horizontal { degree: i32 },
}

/// The Newton diagram: a finite sign pattern on the lattice. Queries at any
/// integer point are legal and return [`Sign::Zero`] off the support.
#[derive(Clone, PartialEq, Eq)]
pub struct NewtonDiagram {
    dimension: usize,
    support: BTreeMap<ExponentVector, Sign>,
}

impl NewtonDiagram {
    /// The diagram of a quotient polynomial: the sign of each coefficient.
    pub fn from_quotient<C: Coefficient>(quotient: &Polynomial<C>) -> Self {
        let support = quotient
            .terms()
            .map(|(exponent, coefficient)| (exponent.clone(), Sign::of(coefficient)))
            .collect();
        NewtonDiagram {
            dimension: quotient.dimension(),
            support,
        }
    }

    /// Builds a diagram from explicit sign data; zero entries are dropped.
    pub fn from_support<I>(dimension: usize, points: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, Sign)>,
    {
        assert!(dimension >= 1, "dimension must be at least 1");
        let mut support = BTreeMap::new();
        for (point, sign) in points {
            assert_eq!(
                point.dimension(),
                dimension,
                "support point length must equal dimension"
            );
            if sign.is_nonzero() {
                support.insert(point, sign);
            }
        }
        NewtonDiagram { dimension, support }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn support(&self) -> impl Iterator<Item = (&ExponentVector, Sign)> {
        self.support.iter().map(|(point, &sign)| (point, sign))
    }

    pub fn support_len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Sign at an arbitrary lattice point.
    pub fn sign(&self, point: &ExponentVector) -> Sign {
        assert_eq!(
            point.dimension(),
            self.dimension,
            "query point length must equal dimension"
        );
        self.support
            .get(point.entries())
            .copied()
            .unwrap_or(Sign::Zero)
    }

    fn sign_slice(&self, entries: &[i32]) -> Sign {
        self.support.get(entries).copied().unwrap_or(Sign::Zero)
    }

    /// Componentwise minimum of the support, the `a` of the bounding set
    /// `{x : x_j >= a_j, |x| <= k}`; `None` for the empty diagram.
    pub fn lower_corner(&self) -> Option<ExponentVector> {
        if self.support.is_empty() {
            return None;
        }
        let mut lower = vec![i32::MAX; self.dimension];
        for point in self.support.keys() {
            for (axis, &e) in point.entries().iter().enumerate() {
                lower[axis] = lower[axis].min(e);
            }
        }
        Some(ExponentVector::new(lower))
    }

    /// Maximal total degree over the support, the `k` of the bounding set.
    pub fn top_total(&self) -> Option<i32> {
        self.support.keys().map(ExponentVector::total).max()
    }

    /// Size of the diagram: `k - |a| + 1` for the minimal bounding set, or 0
    /// for the empty diagram.
    pub fn size(&self) -> u32 {
        match (self.lower_corner(), self.top_total()) {
            (Some(lower), Some(top)) => (top - lower.total() + 1) as u32,
            _ => 0,
        }
    }

    /// Classifies a point as a sink, a source, or neither.
    ///
    /// A sink has value N or 0 with every downward neighbor P or 0; a source
    /// has value P or 0 with every downward neighbor N or 0; in both cases at
    /// least one of the inspected values must be nonzero.
    pub fn classify_node(&self, point: &ExponentVector) -> Option<NodeKind> {
        let value = self.sign(point);
        let mut any_nonzero = value.is_nonzero();
        let mut sink_possible = value != Sign::P;
        let mut source_possible = value != Sign::N;
        let mut scratch = point.entries().to_vec();
        for axis in 0..self.dimension {
            scratch[axis] -= 1;
            let below = self.sign_slice(&scratch);
            scratch[axis] += 1;
            any_nonzero |= below.is_nonzero();
            match below {
                Sign::P => source_possible = false,
                Sign::N => sink_possible = false,
                Sign::Zero => {}
            }
            if !sink_possible && !source_possible {
                return None;
            }
        }
        if !any_nonzero {
            return None;
        }
        if sink_possible {
            Some(NodeKind::Sink)
        } else if source_possible {
            Some(NodeKind::Source)
        } else {
            None
        }
    }

    /// All points that can possibly be nodes: the support and its upward
    /// neighbors. Scanning the support bounding box inflated by one per axis
    /// classifies the same set; everything outside both is all-zero.
    fn node_candidates(&self) -> BTreeSet<ExponentVector> {
        let mut candidates = BTreeSet::new();
        for point in self.support.keys() {
            candidates.insert(point.clone());
            for axis in 0..self.dimension {
                candidates.insert(point.up(axis));
            }
        }
        candidates
    }

    /// Every node with its kind and geometric class, sorted by position.
    pub fn nodes(&self) -> Vec<NodeRecord> {
        self.node_candidates()
            .into_iter()
            .filter_map(|position| {
                self.classify_node(&position).map(|kind| NodeRecord {
                    geometry: self.geometry(&position),
                    position,
                    kind,
                })
            })
            .collect()
    }

    pub fn node_count(&self) -> usize {
        self.node_candidates()
            .into_iter()
            .filter(|position| self.classify_node(position).is_some())
            .count()
    }

    /// Reference scan over the support bounding box inflated by one in every
    /// axis; agrees with [`NewtonDiagram::nodes`] and exists as a cross-check.
    pub fn nodes_box_scan(&self) -> Vec<NodeRecord> {
        let Some(lower) = self.lower_corner() else {
            return Vec::new();
        };
        let mut upper = vec![i32::MIN; self.dimension];
        for point in self.support.keys() {
            for (axis, &e) in point.entries().iter().enumerate() {
                upper[axis] = upper[axis].max(e);
            }
        }
        let mut records = Vec::new();
        let low: Vec<i32> = lower.entries().iter().map(|&e| e - 1).collect();
        let high: Vec<i32> = upper.iter().map(|&e| e + 1).collect();
        let mut cursor = low.clone();
        loop {
            let position = ExponentVector::new(cursor.clone());
            if let Some(kind) = self.classify_node(&position) {
                records.push(NodeRecord {
                    geometry: self.geometry(&position),
                    position,
                    kind,
                });
            }
            let mut axis = 0;
            loop {
                if axis == self.dimension {
                    records.sort_by(|a, b| a.position.cmp(&b.position));
                    return records;
                }
                cursor[axis] += 1;
                if cursor[axis] <= high[axis] {
                    break;
                }
                cursor[axis] = low[axis];
                axis += 1;
            }
        }
    }

    /// True when the diagram has exactly one source, located at the origin;
    /// every other node is then a sink.
    pub fn has_unique_source_at_origin(&self) -> bool {
        let origin = ExponentVector::zeros(self.dimension);
        let mut sources = 0usize;
        let mut source_at_origin = false;
        for record in self.nodes() {
            if record.kind == NodeKind::Source {
                sources += 1;
                if record.position == origin {
                    source_at_origin = true;
                }
            }
        }
        sources == 1 && source_at_origin
    }

    /// Geometric class of a point, from its value and the count of nonzero
    /// downward neighbors.
    pub fn geometry(&self, point: &ExponentVector) -> Geometry {
        let nonzero_value = self.sign(point).is_nonzero();
        let mut scratch = point.entries().to_vec();
        let nonzero_below = (0..self.dimension)
            .filter(|&axis| {
                scratch[axis] -= 1;
                let nonzero = self.sign_slice(&scratch).is_nonzero();
                scratch[axis] += 1;
                nonzero
            })
            .count();
        match (nonzero_value, nonzero_below) {
            (true, 0) => Geometry::BottomCorner,
            (false, 1) => Geometry::TopCorner,
            (true, 1) => Geometry::VerticalEdge,
            (false, 2) => Geometry::HorizontalEdge,
            (true, 2) => Geometry::VerticalFacial,
            (false, 3) => Geometry::HorizontalFacial,
            _ => Geometry::Other,
        }
    }

    /// All vertical and horizontal faces.
    ///
    /// A vertical face for an axis pair collects the support points that are
    /// bottom corners, vertical-edge or vertical-facial points in one plane
    /// spanned by the pair, connected through steps along the two free axes.
    /// A horizontal face collects top-corner, horizontal-edge and
    /// horizontal-facial points in one constant-degree plane with all but
    /// three coordinates fixed, connected through the in-plane steps
    /// `e_i - e_j`.
    pub fn faces(&self) -> Vec<Face> {
        let mut faces = Vec::new();
        let n = self.dimension;
        if n < 2 {
            return faces;
        }
        let vertical_eligible: Vec<ExponentVector> = self
            .support
            .keys()
            .filter(|point| {
                matches!(
                    self.geometry(point),
                    Geometry::BottomCorner | Geometry::VerticalEdge | Geometry::VerticalFacial
                )
            })
            .cloned()
            .collect();
        for k in 0..n {
            for m in (k + 1)..n {
                let mut groups: BTreeMap<Vec<i32>, Vec<ExponentVector>> = BTreeMap::new();
                for point in &vertical_eligible {
                    let fixed: Vec<i32> = point
                        .entries()
                        .iter()
                        .enumerate()
                        .filter(|&(axis, _)| axis != k && axis != m)
                        .map(|(_, &e)| e)
                        .collect();
                    groups.entry(fixed).or_default().push(point.clone());
                }
                for group in groups.into_values() {
                    let steps = |point: &ExponentVector| {
                        vec![point.up(k), point.down(k), point.up(m), point.down(m)]
                    };
                    for component in connected_components(&group, steps) {
                        faces.push(Face {
                            kind: FaceKind::Vertical { axes: (k, m) },
                            points: component,
                        });
                    }
                }
            }
        }
        if n >= 3 {
            let horizontal_eligible: Vec<ExponentVector> = self
                .node_candidates()
                .into_iter()
                .filter(|point| {
                    matches!(
                        self.geometry(point),
                        Geometry::TopCorner | Geometry::HorizontalEdge | Geometry::HorizontalFacial
                    )
                })
                .collect();
            let mut triples = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    for l in (j + 1)..n {
                        triples.push([i, j, l]);
                    }
                }
            }
            for triple in triples {
                let mut groups: BTreeMap<(Vec<i32>, i32), Vec<ExponentVector>> = BTreeMap::new();
                for point in &horizontal_eligible {
                    let fixed: Vec<i32> = point
                        .entries()
                        .iter()
                        .enumerate()
                        .filter(|&(axis, _)| !triple.contains(&axis))
                        .map(|(_, &e)| e)
                        .collect();
                    groups
                        .entry((fixed, point.total()))
                        .or_default()
                        .push(point.clone());
                }
                for ((_, degree), group) in groups {
                    let steps = |point: &ExponentVector| {
                        let mut out = Vec::with_capacity(6);
                        for &i in &triple {
                            for &j in &triple {
                                if i != j {
                                    out.push(point.up(i).down(j));
                                }
                            }
                        }
                        out
                    };
                    for component in connected_components(&group, steps) {
                        faces.push(Face {
                            kind: FaceKind::Horizontal { degree },
                            points: component,
                        });
                    }
                }
            }
        }
        faces
    }

    /// Nodes whose positions lie in the given point set.
    pub fn nodes_on(&self, points: &[ExponentVector]) -> Vec<NodeRecord> {
        let set: BTreeSet<&ExponentVector> = points.iter().collect();
        self.nodes()
            .into_iter()
            .filter(|record| set.contains(&record.position))
            .collect()
    }

    /// The diagram with variables permuted: entry `i` of each support point
    /// becomes entry `perm[i]` of the image.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let support = self
            .support
            .iter()
            .map(|(point, &sign)| (point.permuted(perm), sign))
            .collect();
        NewtonDiagram {
            dimension: self.dimension,
            support,
        }
    }

    /// Serializable dump with stable ordering.
    pub fn dump(&self) -> DiagramDump {
        DiagramDump {
            dimension: self.dimension,
            points: self
                .support
                .iter()
                .map(|(point, &sign)| DumpPoint {
                    alpha: point.entries().to_vec(),
                    sign,
                })
                .collect(),
            size: self.size(),
            nodes: self
                .nodes()
                .into_iter()
                .map(|record| DumpNode {
                    alpha: record.position.entries().to_vec(),
                    kind: record.kind,
                    geometry: record.geometry,
                })
                .collect(),
        }
    }

    /// Rebuilds a diagram from a dump.
    pub fn from_dump(dump: &DiagramDump) -> Self {
        NewtonDiagram::from_support(
            dump.dimension,
            dump.points
                .iter()
                .map(|p| (ExponentVector::new(p.alpha.clone()), p.sign)),
        )
    }

    /// Row-per-degree ASCII rendering with `P`, `N` and `.` cells; `None`
    /// for dimensions above 3.
    pub fn ascii_grid(&self) -> Option<String> {
        let top = self.top_total().unwrap_or(0).max(0);
        let mut out = String::new();
        match self.dimension {
            1 => {
                for level in 0..=top {
                    out.push(self.sign(&ExponentVector::new(vec![level])).glyph());
                }
                out.push('\n');
            }
            2 => {
                for level in (0..=top).rev() {
                    out.push_str(&format!("{level:>3} | "));
                    for a in 0..=level {
                        out.push(self.sign(&ExponentVector::new(vec![a, level - a])).glyph());
                        out.push(' ');
                    }
                    out.push('\n');
                }
            }
            3 => {
                for level in (0..=top).rev() {
                    out.push_str(&format!("degree {level}:\n"));
                    for a in 0..=level {
                        out.push_str("  ");
                        for b in 0..=(level - a) {
                            let c = level - a - b;
                            out.push(self.sign(&ExponentVector::new(vec![a, b, c])).glyph());
                            out.push(' ');
                        }
                        out.push('\n');
                    }
                }
            }
            _ => return None,
        }
        Some(out)
    }
}

impl std::fmt::Debug for NewtonDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NewtonDiagram[{}]{{", self.dimension)?;
        for (i, (point, sign)) in self.support.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{point:?}:{}", sign.glyph())?;
        }
        write!(f, "}}")
    }
}

/// Structured dump format shared by the CLI and test fixtures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDump {
    pub dimension: usize,
    pub points: Vec<DumpPoint>,
    pub size: u32,
    pub nodes: Vec<DumpNode>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DumpPoint {
    pub alpha: Vec<i32>,
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DumpNode {
    pub alpha: Vec<i32>,
    pub kind: NodeKind,
    pub geometry: Geometry,
}

/// Connected components of `points` under the neighbor relation given by
/// `steps`, returned sorted for determinism.
fn connected_components<F>(points: &[ExponentVector], steps: F) -> Vec<Vec<ExponentVector>>
where
    F: Fn(&ExponentVector) -> Vec<ExponentVector>,
{
    let set: BTreeSet<&ExponentVector> = points.iter().collect();
    let mut seen: BTreeSet<&ExponentVector> = BTreeSet::new();
    let mut components = Vec::new();
    for start in points {
        if seen.contains(start) {
            continue;
        }
        let mut component = Vec::new();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(point) = stack.pop() {
            component.push(point.clone());
            for neighbor in steps(point) {
                if let Some(&found) = set.get(&neighbor) {
                    if seen.insert(found) {
                        stack.push(found);
                    }
                }
            }
        }
        component.sort();
        components.push(component);
    }
    components.sort();
    components
}
