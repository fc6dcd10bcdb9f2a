//! Simple diagrams, the `2f + e + c` boundary count, the filling procedure,
//! complete sets of simple diagrams per edge, and symmetric 2-D diagrams.

mod symmetric;

pub use symmetric::{row_node_count, SymmetricDiagram2D, SymmetricDichotomy, SymmetricRow};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{DiagramDump, Geometry, NewtonDiagram, Sign};
use crate::exponent::ExponentVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Faces2dError {
    #[error("diagram is not 2-dimensional (dimension {dimension})")]
    NotTwoDimensional { dimension: usize },
    #[error("diagram is empty")]
    Empty,
    #[error("not a simple diagram: bottom corner at {position:?} above the lowest nonzero row")]
    NotSimple { position: ExponentVector },
    #[error("diagram is not filled")]
    NotFilled,
    #[error("no fill step kept the boundary count from increasing")]
    FillWouldIncrease,
    #[error("diagram does not have a unique source at the origin")]
    NoUniqueSource,
    #[error("invalid edge ({k}, {m}) for dimension {dimension}")]
    InvalidEdge {
        k: usize,
        m: usize,
        dimension: usize,
    },
    #[error("no support point on a vertical face at row {row}")]
    ExtractionGap { row: i32 },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("expected a polynomial in 3 variables, got {dimension}")]
    NotThreeVariables { dimension: usize },
}

/// A 2-dimensional diagram whose bottom-corner nodes all lie in its lowest
/// nonzero row. Rows are levels of constant total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleDiagram {
    diagram: NewtonDiagram,
    base_row: i32,
    height: u32,
}

/// Boundary-node counts of a simple diagram, bottom corners excluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceNodeCount {
    pub facial: u32,
    pub edge: u32,
    pub corner: u32,
    pub height: u32,
}

impl FaceNodeCount {
    /// The weighted sum `2f + e + c`.
    pub fn weighted(&self) -> u32 {
        2 * self.facial + self.edge + self.corner
    }
}

impl SimpleDiagram {
    /// Validates that `diagram` is 2-dimensional, nonempty, and has bottom
    /// corners only in its lowest nonzero row.
    pub fn new(diagram: NewtonDiagram) -> Result<Self, Faces2dError> {
        if diagram.dimension() != 2 {
            return Err(Faces2dError::NotTwoDimensional {
                dimension: diagram.dimension(),
            });
        }
        let Some(base_row) = diagram.support().map(|(p, _)| p.total()).min() else {
            return Err(Faces2dError::Empty);
        };
        let top_row = diagram
            .support()
            .map(|(p, _)| p.total())
            .max()
            .expect("nonempty");
        for (point, _) in diagram.support() {
            if diagram.geometry(point) == Geometry::BottomCorner && point.total() != base_row {
                return Err(Faces2dError::NotSimple {
                    position: point.clone(),
                });
            }
        }
        // contiguous rows follow from the bottom-corner rule, but check anyway
        for row in base_row..=top_row {
            if diagram.support().all(|(p, _)| p.total() != row) {
                return Err(Faces2dError::NotSimple {
                    position: ExponentVector::new(vec![0, row]),
                });
            }
        }
        Ok(SimpleDiagram {
            diagram,
            base_row,
            height: (top_row - base_row + 1) as u32,
        })
    }

    pub fn diagram(&self) -> &NewtonDiagram {
        &self.diagram
    }

    /// Number of nonzero rows.
    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn base_row(&self) -> i32 {
        self.base_row
    }

    pub fn top_row(&self) -> i32 {
        self.base_row + self.height as i32 - 1
    }

    /// First coordinates of the support cells in one row, sorted.
    fn row_support(&self, row: i32) -> Vec<i32> {
        let mut cells: Vec<i32> = self
            .diagram
            .support()
            .filter(|(p, _)| p.total() == row)
            .map(|(p, _)| p.entry(0))
            .collect();
        cells.sort();
        cells
    }

    fn cell(row: i32, a: i32) -> ExponentVector {
        ExponentVector::new(vec![a, row - a])
    }

    /// Counts facial, edge and corner nodes, excluding bottom-corner nodes.
    pub fn face_node_count(&self) -> FaceNodeCount {
        DenseGrid::from_simple(self).breakdown(self.height)
    }

    /// True when the lowest row's support is contiguous and every nonzero
    /// point below the top row has both upward neighbors nonzero.
    pub fn is_filled(&self) -> bool {
        let bottom = self.row_support(self.base_row);
        let contiguous = bottom.windows(2).all(|w| w[1] == w[0] + 1);
        if !contiguous {
            return false;
        }
        for (point, _) in self.diagram.support() {
            if point.total() == self.top_row() {
                continue;
            }
            if !self.diagram.sign(&point.up(0)).is_nonzero()
                || !self.diagram.sign(&point.up(1)).is_nonzero()
            {
                return false;
            }
        }
        true
    }

    /// Fills the diagram bottom-up with alternating sign runs, never letting
    /// the `2f + e + c` count grow. Each step picks the first candidate run
    /// (shortest first, `P` phase first) that keeps the count from
    /// increasing; a step with no such candidate is an error.
    pub fn fill(&self) -> Result<SimpleDiagram, Faces2dError> {
        let mut grid = DenseGrid::from_simple(self);
        let budget = grid.weighted_count();
        loop {
            let count = grid.weighted_count();
            let Some(target_row) = grid.lowest_violating_row() else {
                break;
            };
            let mut applied = false;
            for run in grid.fill_candidates(target_row) {
                let mut next = grid.clone();
                next.apply(&run);
                if next.weighted_count() <= count {
                    grid = next;
                    applied = true;
                    break;
                }
            }
            if !applied {
                return Err(Faces2dError::FillWouldIncrease);
            }
        }
        let filled = grid.to_simple()?;
        debug_assert!(filled.is_filled());
        debug_assert!(filled.face_node_count().weighted() <= budget);
        Ok(filled)
    }

    /// Sign changes per row, bottom to top. Requires a filled diagram.
    pub fn sign_changes_per_row(&self) -> Result<Vec<u32>, Faces2dError> {
        if !self.is_filled() {
            return Err(Faces2dError::NotFilled);
        }
        let mut changes = Vec::with_capacity(self.height as usize);
        for row in self.base_row..=self.top_row() {
            let support = self.row_support(row);
            let signs: Vec<Sign> = support
                .iter()
                .map(|&a| self.diagram.sign(&Self::cell(row, a)))
                .collect();
            let count = signs.windows(2).filter(|w| w[0] != w[1]).count() as u32;
            changes.push(count);
        }
        Ok(changes)
    }

    /// Length of one row's support.
    pub fn row_length(&self, row: i32) -> usize {
        self.row_support(row).len()
    }

    /// The diagram dump extended with the height.
    pub fn dump(&self) -> SimpleDiagramDump {
        SimpleDiagramDump {
            diagram: self.diagram.dump(),
            height: self.height,
        }
    }

    pub fn from_dump(dump: &SimpleDiagramDump) -> Result<Self, Faces2dError> {
        SimpleDiagram::new(NewtonDiagram::from_dump(&dump.diagram))
    }
}

/// Serialization of a simple diagram: the dump format plus a `height` field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleDiagramDump {
    #[serde(flatten)]
    pub diagram: DiagramDump,
    pub height: u32,
}

/// An alternating run of cells to fill in one row.
#[derive(Clone, Debug)]
struct FillRun {
    row: i32,
    cells: Vec<i32>,
    p_first: bool,
}

/// Flat sign grid over the rows of a simple diagram, with headroom on the
/// right for fills that widen rows on the way up. All the counting the fill
/// search does happens here, without touching the map-backed diagram.
#[derive(Clone)]
pub(crate) struct DenseGrid {
    base_row: i32,
    col_min: i32,
    width: usize,
    rows: usize,
    cells: Vec<Sign>,
}

impl DenseGrid {
    pub(crate) fn from_simple(simple: &SimpleDiagram) -> Self {
        let rows = simple.height as usize;
        let mut col_min = i32::MAX;
        let mut col_max = i32::MIN;
        for (point, _) in simple.diagram.support() {
            col_min = col_min.min(point.entry(0));
            col_max = col_max.max(point.entry(0));
        }
        // each filled row widens at most one column beyond the row below
        let width = (col_max - col_min + 1) as usize + rows;
        let mut grid = DenseGrid {
            base_row: simple.base_row,
            col_min,
            width,
            rows,
            cells: vec![Sign::Zero; width * rows],
        };
        for (point, sign) in simple.diagram.support() {
            grid.set(point.total(), point.entry(0), sign);
        }
        grid
    }

    fn top_row(&self) -> i32 {
        self.base_row + self.rows as i32 - 1
    }

    fn index(&self, row: i32, col: i32) -> Option<usize> {
        let r = row - self.base_row;
        let c = col - self.col_min;
        if r < 0 || c < 0 || r >= self.rows as i32 || c >= self.width as i32 {
            None
        } else {
            Some(r as usize * self.width + c as usize)
        }
    }

    fn sign(&self, row: i32, col: i32) -> Sign {
        self.index(row, col).map_or(Sign::Zero, |i| self.cells[i])
    }

    fn set(&mut self, row: i32, col: i32, sign: Sign) {
        let i = self.index(row, col).expect("cell within the grid");
        self.cells[i] = sign;
    }

    /// Facial, edge and top-corner node counts, bottom corners excluded.
    /// The downward neighbors of `(a, b)` sit in the row below at columns
    /// `a - 1` and `a`.
    fn breakdown(&self, height: u32) -> FaceNodeCount {
        let mut facial = 0;
        let mut edge = 0;
        let mut corner = 0;
        for row in self.base_row..=self.top_row() + 1 {
            for col in (self.col_min - 1)..=(self.col_min + self.width as i32) {
                let value = self.sign(row, col);
                let left = self.sign(row - 1, col - 1);
                let right = self.sign(row - 1, col);
                if !value.is_nonzero() && !left.is_nonzero() && !right.is_nonzero() {
                    continue;
                }
                let sink = value != Sign::P && left != Sign::N && right != Sign::N;
                let source = value != Sign::N && left != Sign::P && right != Sign::P;
                if !sink && !source {
                    continue;
                }
                let below = usize::from(left.is_nonzero()) + usize::from(right.is_nonzero());
                match (value.is_nonzero(), below) {
                    (true, 0) => {}
                    (false, 1) => corner += 1,
                    (true, 1) | (false, 2) => edge += 1,
                    (true, 2) => facial += 1,
                    _ => unreachable!("at most two downward neighbors exist"),
                }
            }
        }
        FaceNodeCount {
            facial,
            edge,
            corner,
            height,
        }
    }

    fn weighted_count(&self) -> u32 {
        self.breakdown(0).weighted()
    }

    /// Support column interval of a row; rows of a mid-fill grid are
    /// intervals except possibly the one under repair.
    fn row_extent(&self, row: i32) -> Option<(i32, i32)> {
        let mut min = None;
        let mut max = None;
        for col in self.col_min..(self.col_min + self.width as i32) {
            if self.sign(row, col).is_nonzero() {
                min.get_or_insert(col);
                max = Some(col);
            }
        }
        min.zip(max)
    }

    /// Lowest row that still needs filling: a gap inside the bottom row's
    /// support, or a zero cell above a nonzero one.
    fn lowest_violating_row(&self) -> Option<i32> {
        let (low, high) = self
            .row_extent(self.base_row)
            .expect("bottom row is nonempty");
        for col in low..=high {
            if !self.sign(self.base_row, col).is_nonzero() {
                return Some(self.base_row);
            }
        }
        for row in (self.base_row + 1)..=self.top_row() {
            let (low, high) = self
                .row_extent(row - 1)
                .expect("rows below the target are filled");
            for col in low..=(high + 1) {
                if !self.sign(row, col).is_nonzero() {
                    return Some(row);
                }
            }
        }
        None
    }

    /// Candidate alternating runs for one fill step, in deterministic order:
    /// shortest first, then start cell, then `P` phase first.
    fn fill_candidates(&self, row: i32) -> Vec<FillRun> {
        let mut runs: BTreeSet<(Vec<i32>, bool)> = BTreeSet::new();
        if row == self.base_row {
            // interior gaps of the bottom row, filled whole
            let (low, high) = self.row_extent(row).expect("bottom row is nonempty");
            let mut gap = Vec::new();
            for col in low..=high {
                if self.sign(row, col).is_nonzero() {
                    if !gap.is_empty() {
                        runs.insert((gap.clone(), true));
                        runs.insert((std::mem::take(&mut gap), false));
                    }
                } else {
                    gap.push(col);
                }
            }
        } else {
            let (low, high) = self.row_extent(row - 1).expect("row below is nonempty");
            let high = high + 1;
            for start in low..=high {
                if self.sign(row, start).is_nonzero() {
                    continue;
                }
                for dir in [1i32, -1] {
                    let mut cells = Vec::new();
                    let mut col = start;
                    while col >= low && col <= high && !self.sign(row, col).is_nonzero() {
                        cells.push(col);
                        let mut sorted = cells.clone();
                        sorted.sort();
                        runs.insert((sorted.clone(), true));
                        runs.insert((sorted, false));
                        col += dir;
                    }
                }
            }
        }
        let mut out: Vec<FillRun> = runs
            .into_iter()
            .map(|(cells, p_first)| FillRun {
                row,
                cells,
                p_first,
            })
            .collect();
        out.sort_by_key(|run| (run.cells.len(), run.cells.clone(), !run.p_first));
        out
    }

    fn apply(&mut self, run: &FillRun) {
        for (offset, &col) in run.cells.iter().enumerate() {
            let sign = if (offset % 2 == 0) == run.p_first {
                Sign::P
            } else {
                Sign::N
            };
            self.set(run.row, col, sign);
        }
    }

    fn to_simple(&self) -> Result<SimpleDiagram, Faces2dError> {
        let mut points = Vec::new();
        for row in self.base_row..=self.top_row() {
            for col in self.col_min..(self.col_min + self.width as i32) {
                let sign = self.sign(row, col);
                if sign.is_nonzero() {
                    points.push((ExponentVector::new(vec![col, row - col]), sign));
                }
            }
        }
        SimpleDiagram::new(NewtonDiagram::from_support(2, points))
    }
}

/// Reference node-walk implementation of the boundary count; the dense grid
/// count must agree with it.
#[cfg(test)]
pub(crate) fn boundary_count_reference(diagram: &NewtonDiagram, height: u32) -> FaceNodeCount {
    let mut facial = 0;
    let mut edge = 0;
    let mut corner = 0;
    for record in diagram.nodes() {
        match record.geometry {
            Geometry::BottomCorner => {}
            Geometry::TopCorner => corner += 1,
            Geometry::VerticalEdge | Geometry::HorizontalEdge => edge += 1,
            Geometry::VerticalFacial => facial += 1,
            other => unreachable!("geometry {other:?} cannot occur at a 2-D node"),
        }
    }
    FaceNodeCount {
        facial,
        edge,
        corner,
        height,
    }
}

/// A simple diagram extracted from a vertical face, together with the data
/// needed to place its points back into the parent diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedFace {
    pub simple: SimpleDiagram,
    /// the edge axes `(k, m)` with `k < m`
    pub axes: (usize, usize),
    /// values of the remaining coordinates on the face's plane, in axis order
    pub fixed: Vec<i32>,
}

impl EmbeddedFace {
    /// The parent-diagram point a flattened `(a, b)` position stands for.
    pub fn embed(&self, flat: &ExponentVector) -> ExponentVector {
        let (k, m) = self.axes;
        let n = self.fixed.len() + 2;
        let mut fixed = self.fixed.iter().copied();
        let mut entries = Vec::with_capacity(n);
        for axis in 0..n {
            if axis == k {
                entries.push(flat.entry(0));
            } else if axis == m {
                entries.push(flat.entry(1));
            } else {
                entries.push(
                    fixed
                        .next()
                        .expect("fixed coordinates cover the other axes"),
                );
            }
        }
        ExponentVector::new(entries)
    }
}

/// Extracts the complete set of simple diagrams of `diagram` for the edge
/// `(k, m)` (zero-based axes).
///
/// Starting from the unique bottom corner, each step takes the vertical face
/// for the edge that contains a support point of smallest remaining-variable
/// degree in the next unclaimed row (ties broken lexicographically), keeps
/// the part of the face from that row upward, and repeats until the top.
/// The heights of the extracted faces sum to the size of the diagram.
pub fn complete_simple_set(
    diagram: &NewtonDiagram,
    k: usize,
    m: usize,
) -> Result<Vec<SimpleDiagram>, Faces2dError> {
    Ok(complete_simple_set_embedded(diagram, k, m)?
        .into_iter()
        .map(|face| face.simple)
        .collect())
}

/// Like [`complete_simple_set`], keeping each face's plane data.
pub fn complete_simple_set_embedded(
    diagram: &NewtonDiagram,
    k: usize,
    m: usize,
) -> Result<Vec<EmbeddedFace>, Faces2dError> {
    let n = diagram.dimension();
    if k == m || k >= n || m >= n {
        return Err(Faces2dError::InvalidEdge { k, m, dimension: n });
    }
    if !diagram.has_unique_source_at_origin() {
        return Err(Faces2dError::NoUniqueSource);
    }
    let (k, m) = if k < m { (k, m) } else { (m, k) };
    let faces: Vec<Vec<ExponentVector>> = diagram
        .faces()
        .into_iter()
        .filter_map(|face| match face.kind {
            crate::diagram::FaceKind::Vertical { axes } if axes == (k, m) => Some(face.points),
            _ => None,
        })
        .collect();
    let size = diagram.size() as i32;
    let mut extracted = Vec::new();
    let mut row = 0i32;
    while row < size {
        let mut level_points: Vec<&ExponentVector> = diagram
            .support()
            .filter(|(p, _)| p.total() == row)
            .map(|(p, _)| p)
            .collect();
        level_points.sort_by_key(|p| {
            let remaining: i32 = p
                .entries()
                .iter()
                .enumerate()
                .filter(|&(axis, _)| axis != k && axis != m)
                .map(|(_, &e)| e)
                .sum();
            (remaining, (*p).clone())
        });
        let mut chosen_face: Option<&Vec<ExponentVector>> = None;
        for point in level_points {
            if let Some(face) = faces.iter().find(|face| face.iter().any(|q| q == point)) {
                chosen_face = Some(face);
                break;
            }
        }
        let Some(face) = chosen_face else {
            return Err(Faces2dError::ExtractionGap { row });
        };
        let fixed: Vec<i32> = face[0]
            .entries()
            .iter()
            .enumerate()
            .filter(|&(axis, _)| axis != k && axis != m)
            .map(|(_, &e)| e)
            .collect();
        let part: Vec<(ExponentVector, Sign)> = face
            .iter()
            .filter(|p| p.total() >= row)
            .map(|p| {
                let flat = ExponentVector::new(vec![p.entry(k), p.entry(m)]);
                (flat, diagram.sign(p))
            })
            .collect();
        let simple = SimpleDiagram::new(NewtonDiagram::from_support(2, part))?;
        row += simple.height() as i32;
        extracted.push(EmbeddedFace {
            simple,
            axes: (k, m),
            fixed,
        });
    }
    debug_assert_eq!(
        extracted.iter().map(|f| f.simple.height()).sum::<u32>(),
        diagram.size(),
        "face heights must sum to the diagram size"
    );
    Ok(extracted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Poly;

    fn ev(entries: &[i32]) -> ExponentVector {
        ExponentVector::from(entries)
    }

    fn simple_from(points: &[((i32, i32), Sign)]) -> SimpleDiagram {
        SimpleDiagram::new(NewtonDiagram::from_support(
            2,
            points.iter().map(|&((a, b), s)| (ev(&[a, b]), s)),
        ))
        .unwrap()
    }

    fn qf_simple() -> SimpleDiagram {
        let p = Poly::parse("x^3 + 3*x*y + y^3", 2).unwrap();
        SimpleDiagram::new(NewtonDiagram::from_quotient(
            &p.divide_by_hyperplane().quotient,
        ))
        .unwrap()
    }

    #[test]
    fn single_point_counts() {
        let f = simple_from(&[((0, 0), Sign::P)]);
        assert_eq!(f.height(), 1);
        let count = f.face_node_count();
        assert_eq!((count.facial, count.edge, count.corner), (0, 0, 2));
        assert_eq!(count.weighted(), 2);
        // an N point also yields two counted top corners (both sources)
        let g = simple_from(&[((0, 0), Sign::N)]);
        assert_eq!(g.face_node_count().weighted(), 2);
    }

    #[test]
    fn sharp_cubic_quotient_as_simple_diagram() {
        let f = qf_simple();
        assert_eq!(f.height(), 3);
        let count = f.face_node_count();
        // sinks at (3,0) and (0,3) are top corners; the sink at (1,1) is a
        // facial node; the source at the origin is a bottom corner, ignored
        assert_eq!((count.facial, count.edge, count.corner), (1, 0, 2));
        assert!(count.weighted() >= 4);
    }

    #[test]
    fn bottom_corner_above_base_row_is_rejected() {
        let diagram =
            NewtonDiagram::from_support(2, [(ev(&[0, 0]), Sign::P), (ev(&[2, 0]), Sign::P)]);
        match SimpleDiagram::new(diagram) {
            Err(Faces2dError::NotSimple { position }) => assert_eq!(position, ev(&[2, 0])),
            other => panic!("expected NotSimple, got {other:?}"),
        }
    }

    #[test]
    fn filled_diagram_is_a_fill_fixpoint() {
        let f = simple_from(&[((0, 0), Sign::P), ((1, 0), Sign::P), ((0, 1), Sign::P)]);
        assert!(f.is_filled());
        let filled = f.fill().unwrap();
        assert_eq!(filled, f);
    }

    #[test]
    fn bottom_gap_fills_without_increasing_the_count() {
        // lowest row [P . P]: two isolated bottom corners with a gap between
        let f = simple_from(&[((0, 2), Sign::P), ((2, 0), Sign::P)]);
        let before = f.face_node_count().weighted();
        let filled = f.fill().unwrap();
        assert!(filled.is_filled());
        assert!(filled.face_node_count().weighted() <= before);
        assert!(filled.diagram().sign(&ev(&[1, 1])).is_nonzero());
    }

    #[test]
    fn one_sided_run_fills_without_increasing_the_count() {
        // bottom row of three P cells, one P above the left end: the two
        // zeros to its right must be filled
        let f = simple_from(&[
            ((0, 2), Sign::P),
            ((1, 1), Sign::P),
            ((2, 0), Sign::P),
            ((0, 3), Sign::P),
        ]);
        let before = f.face_node_count().weighted();
        let filled = f.fill().unwrap();
        assert!(filled.is_filled());
        assert!(filled.face_node_count().weighted() <= before);
        assert!(filled.diagram().sign(&ev(&[1, 2])).is_nonzero());
        assert!(filled.diagram().sign(&ev(&[2, 1])).is_nonzero());
    }

    #[test]
    fn sign_changes_require_filled_input() {
        let column = simple_from(&[((0, 0), Sign::P), ((0, 1), Sign::N), ((0, 2), Sign::P)]);
        assert_eq!(column.sign_changes_per_row(), Err(Faces2dError::NotFilled));
    }

    #[test]
    fn sign_changes_of_uniform_rows_are_zero() {
        let f = simple_from(&[((0, 0), Sign::P), ((1, 0), Sign::P), ((0, 1), Sign::P)]);
        assert_eq!(f.sign_changes_per_row().unwrap(), vec![0, 0]);
    }

    #[test]
    fn sign_change_accounting_inequality_holds_after_fill() {
        let f = qf_simple();
        let filled = f.fill().unwrap();
        let changes = filled.sign_changes_per_row().unwrap();
        let d = filled.height() as i32;
        let top_len = filled.row_length(filled.top_row()) as i32;
        let s_top = *changes.last().unwrap() as i32;
        let s_bottom = changes[0] as i32;
        assert!(top_len + 1 - s_top + (s_top - s_bottom).abs() >= d + 1);
    }

    #[test]
    fn complete_simple_set_of_single_point() {
        let d = NewtonDiagram::from_quotient(&Poly::one(3));
        for (k, m) in [(0, 1), (0, 2), (1, 2)] {
            let set = complete_simple_set(&d, k, m).unwrap();
            assert_eq!(set.len(), 1);
            assert_eq!(set[0].height(), 1);
            assert_eq!(set[0].diagram().support_len(), 1);
        }
    }

    #[test]
    fn complete_simple_set_heights_sum_to_size() {
        // origin plus a column step in x3: two stacked height-1 faces for
        // the (x1, x2) edge
        let d =
            NewtonDiagram::from_support(3, [(ev(&[0, 0, 0]), Sign::P), (ev(&[0, 0, 1]), Sign::P)]);
        let set = complete_simple_set(&d, 0, 1).unwrap();
        let total: u32 = set.iter().map(|f| f.height()).sum();
        assert_eq!(total, d.size());
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn dense_count_matches_node_walk() {
        let samples = [
            qf_simple(),
            simple_from(&[((0, 0), Sign::P)]),
            simple_from(&[((0, 2), Sign::P), ((2, 0), Sign::N)]),
            simple_from(&[
                ((0, 2), Sign::P),
                ((1, 1), Sign::N),
                ((2, 0), Sign::P),
                ((1, 2), Sign::N),
                ((0, 3), Sign::P),
            ]),
        ];
        for simple in samples {
            let dense = simple.face_node_count();
            let reference = boundary_count_reference(simple.diagram(), simple.height());
            assert_eq!(dense, reference, "count mismatch for {simple:?}");
        }
    }

    #[test]
    fn simple_dump_round_trips_with_height() {
        let f = qf_simple();
        let dump = f.dump();
        assert_eq!(dump.height, 3);
        let json = serde_json::to_string(&dump).unwrap();
        assert!(json.contains("\"height\":3"));
        let back: SimpleDiagramDump = serde_json::from_str(&json).unwrap();
        assert_eq!(SimpleDiagram::from_dump(&back).unwrap(), f);
    }

    #[test]
    fn complete_simple_set_requires_unique_source() {
        let d = NewtonDiagram::from_support(2, [(ev(&[0, 0]), Sign::N)]);
        assert_eq!(
            complete_simple_set(&d, 0, 1),
            Err(Faces2dError::NoUniqueSource)
        );
        let d = NewtonDiagram::from_quotient(&Poly::one(3));
        assert!(matches!(
            complete_simple_set(&d, 1, 1),
            Err(Faces2dError::InvalidEdge { .. })
        ));
    }
}
