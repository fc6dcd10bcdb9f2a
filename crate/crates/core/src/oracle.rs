//! Brute-force enumeration engines: every diagram with a unique source at
//! the origin over a bounded simplex, every small simple diagram, and the
//! audits that verify the node-count bounds and hidden-node estimates on
//! those spaces.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{DiagramDump, NewtonDiagram, NodeKind, Sign};
use crate::exponent::ExponentVector;
use crate::faces2d::{complete_simple_set, Faces2dError, SimpleDiagram};

/// Refuse searches whose raw assignment count exceeds this.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("search space too large: 3^{points} = {} assignments exceeds the budget of {budget}", format_estimate(*.estimate))]
    BudgetExceeded {
        points: usize,
        estimate: u128,
        budget: u128,
    },
    #[error("theorem contradiction: {what}")]
    TheoremContradiction { what: String, dump: DiagramDump },
    #[error("invalid input: {message}")]
    InvalidInput { message: String },
    #[error(transparent)]
    Faces(#[from] Faces2dError),
}

/// The lattice points a size-bounded search assigns signs to: all
/// nonnegative points of total degree below the size bound, sorted
/// lexicographically. Assignments are enumerated in base-3 counter order
/// over this list with digits 0, 1, 2 read as zero, P, N.
#[derive(Clone, Debug)]
pub struct SearchSpace {
    dimension: usize,
    size_bound: u32,
    points: Vec<ExponentVector>,
    totals: Vec<i32>,
    /// candidate node positions: all points with total degree up to the
    /// size bound, each with its own index into `points` (when present) and
    /// the indices of its downward neighbors
    candidates: Vec<Candidate>,
    /// candidate index of each assigned point
    candidate_of_point: Vec<usize>,
}

#[derive(Clone, Debug)]
struct Candidate {
    value: Option<usize>,
    downs: Vec<Option<usize>>,
}

/// Whether enumeration may reject partial assignments early. Pruning skips
/// subtrees whose already-determined points rule the diagram out (the origin
/// not `P`, or a source away from the origin); it never changes the set of
/// valid diagrams produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PruneMode {
    Pruned,
    Exhaustive,
}

/// A valid diagram handed to enumeration visitors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidDiagram {
    pub support: Vec<(ExponentVector, Sign)>,
    pub node_count: usize,
    pub size: u32,
}

impl ValidDiagram {
    pub fn to_newton_diagram(&self, dimension: usize) -> NewtonDiagram {
        NewtonDiagram::from_support(dimension, self.support.iter().cloned())
    }

    /// True when the support has exactly one point in each degree
    /// `0..size`.
    pub fn one_point_per_degree(&self) -> bool {
        if self.support.len() != self.size as usize {
            return false;
        }
        let mut seen = vec![false; self.size as usize];
        for (point, _) in &self.support {
            let level = point.total();
            if level < 0 || level >= self.size as i32 || seen[level as usize] {
                return false;
            }
            seen[level as usize] = true;
        }
        true
    }
}

impl SearchSpace {
    pub fn new(dimension: usize, size_bound: u32) -> Result<Self, OracleError> {
        Self::with_budget(dimension, size_bound, DEFAULT_BUDGET)
    }

    pub fn with_budget(
        dimension: usize,
        size_bound: u32,
        budget: u128,
    ) -> Result<Self, OracleError> {
        if dimension < 1 || size_bound < 1 {
            return Err(OracleError::InvalidInput {
                message: format!("dimension {dimension} and size {size_bound} must be at least 1"),
            });
        }
        let points = simplex_points(dimension, size_bound as i32 - 1);
        let estimate = 3u128.checked_pow(points.len() as u32).unwrap_or(u128::MAX);
        if estimate > budget {
            return Err(OracleError::BudgetExceeded {
                points: points.len(),
                estimate,
                budget,
            });
        }
        let index: BTreeMap<&ExponentVector, usize> =
            points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let candidate_positions = simplex_points(dimension, size_bound as i32);
        let mut candidates = Vec::with_capacity(candidate_positions.len());
        let mut candidate_of_point = vec![usize::MAX; points.len()];
        for position in &candidate_positions {
            let value = index.get(position).copied();
            let downs = (0..dimension)
                .map(|axis| {
                    let below = position.down(axis);
                    if below.is_nonnegative() {
                        index.get(&below).copied()
                    } else {
                        None
                    }
                })
                .collect();
            if let Some(point_index) = value {
                candidate_of_point[point_index] = candidates.len();
            }
            candidates.push(Candidate { value, downs });
        }
        let totals = points.iter().map(ExponentVector::total).collect();
        Ok(SearchSpace {
            dimension,
            size_bound,
            points,
            totals,
            candidates,
            candidate_of_point,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn size_bound(&self) -> u32 {
        self.size_bound
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn assignment_estimate(&self) -> u128 {
        3u128
            .checked_pow(self.points.len() as u32)
            .unwrap_or(u128::MAX)
    }

    fn classify(&self, candidate: &Candidate, signs: &[Sign]) -> Option<NodeKind> {
        let value = candidate.value.map_or(Sign::Zero, |i| signs[i]);
        let mut any_nonzero = value.is_nonzero();
        let mut sink_possible = value != Sign::P;
        let mut source_possible = value != Sign::N;
        for below in &candidate.downs {
            let sign = below.map_or(Sign::Zero, |i| signs[i]);
            any_nonzero |= sign.is_nonzero();
            match sign {
                Sign::P => source_possible = false,
                Sign::N => sink_possible = false,
                Sign::Zero => {}
            }
        }
        if !any_nonzero {
            None
        } else if sink_possible {
            Some(NodeKind::Sink)
        } else if source_possible {
            Some(NodeKind::Source)
        } else {
            None
        }
    }

    /// Final check of a complete assignment: exactly one source, at the
    /// origin. Returns the node count on success.
    fn validate(&self, signs: &[Sign]) -> Option<usize> {
        let mut nodes = 0usize;
        let mut sources = 0usize;
        let mut origin_source = false;
        for candidate in &self.candidates {
            match self.classify(candidate, signs) {
                Some(NodeKind::Source) => {
                    nodes += 1;
                    sources += 1;
                    if sources > 1 {
                        return None;
                    }
                    // the origin is the first point, so its index is 0
                    origin_source = candidate.value == Some(0);
                }
                Some(NodeKind::Sink) => nodes += 1,
                None => {}
            }
        }
        (sources == 1 && origin_source).then_some(nodes)
    }

    fn assignment_size(&self, signs: &[Sign]) -> u32 {
        let top = signs
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_nonzero())
            .map(|(i, _)| self.totals[i])
            .max();
        top.map_or(0, |t| t as u32 + 1)
    }

    /// Enumerates every assignment with a unique source at the origin,
    /// calling the visitor in base-3 counter order. Pruning, when enabled,
    /// rejects partial assignments whose determined points already break
    /// validity; the visited set is identical in both modes.
    pub fn visit_valid_diagrams<F>(&self, mode: PruneMode, mut visitor: F)
    where
        F: FnMut(&ValidDiagram),
    {
        let mut signs = vec![Sign::Zero; self.points.len()];
        self.dfs(0, &mut signs, mode, &mut visitor);
    }

    fn dfs<F>(&self, depth: usize, signs: &mut Vec<Sign>, mode: PruneMode, visitor: &mut F)
    where
        F: FnMut(&ValidDiagram),
    {
        if depth == self.points.len() {
            if let Some(node_count) = self.validate(signs) {
                let support: Vec<(ExponentVector, Sign)> = signs
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s.is_nonzero())
                    .map(|(i, &s)| (self.points[i].clone(), s))
                    .collect();
                visitor(&ValidDiagram {
                    node_count,
                    size: self.assignment_size(signs),
                    support,
                });
            }
            return;
        }
        for digit in [Sign::Zero, Sign::P, Sign::N] {
            signs[depth] = digit;
            if mode == PruneMode::Pruned && self.prunes(depth, signs) {
                continue;
            }
            self.dfs(depth + 1, signs, mode, visitor);
        }
        signs[depth] = Sign::Zero;
    }

    /// Partial-assignment rejection. The point at `depth` has all its
    /// downward neighbors already assigned (they are lexicographically
    /// smaller), so its node status is final.
    fn prunes(&self, depth: usize, signs: &[Sign]) -> bool {
        if depth == 0 {
            // a valid diagram's origin is a source, which forces sign P
            return signs[0] != Sign::P;
        }
        let candidate = &self.candidates[self.candidate_of_point[depth]];
        self.classify(candidate, signs) == Some(NodeKind::Source)
    }

    /// Every valid diagram, materialized; for small spaces and tests.
    pub fn collect_valid(&self, mode: PruneMode) -> Vec<ValidDiagram> {
        let mut out = Vec::new();
        self.visit_valid_diagrams(mode, |d| out.push(d.clone()));
        out
    }

    /// The branches of a worker partition: all assignments of the first
    /// `prefix_len` points, in counter order.
    fn prefixes(&self, prefix_len: usize) -> Vec<Vec<Sign>> {
        let mut out = vec![Vec::new()];
        for _ in 0..prefix_len {
            let mut next = Vec::with_capacity(out.len() * 3);
            for prefix in &out {
                for digit in [Sign::Zero, Sign::P, Sign::N] {
                    let mut extended = prefix.clone();
                    extended.push(digit);
                    next.push(extended);
                }
            }
            out = next;
        }
        out
    }

    /// Like `visit_valid_diagrams(Pruned, ..)` but split over `workers`
    /// threads on the first `ceil(log3 workers)` points. The visitor runs on
    /// collected per-branch results in branch order, so the outcome does not
    /// depend on the worker count.
    pub fn visit_valid_diagrams_parallel<F>(&self, workers: usize, mut visitor: F)
    where
        F: FnMut(&ValidDiagram),
    {
        if workers <= 1 || self.points.is_empty() {
            self.visit_valid_diagrams(PruneMode::Pruned, visitor);
            return;
        }
        let mut prefix_len = 0usize;
        while 3usize.pow(prefix_len as u32) < workers && prefix_len < self.points.len() {
            prefix_len += 1;
        }
        let prefixes = self.prefixes(prefix_len);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool construction cannot fail for small sizes");
        let branches: Vec<Vec<ValidDiagram>> = pool.install(|| {
            use rayon::prelude::*;
            prefixes
                .par_iter()
                .map(|prefix| {
                    let mut found = Vec::new();
                    let mut signs = vec![Sign::Zero; self.points.len()];
                    let mut consistent = true;
                    for (i, &digit) in prefix.iter().enumerate() {
                        signs[i] = digit;
                        if self.prunes(i, &signs) {
                            consistent = false;
                            break;
                        }
                    }
                    if consistent {
                        self.dfs(
                            prefix.len(),
                            &mut signs,
                            PruneMode::Pruned,
                            &mut |d: &ValidDiagram| found.push(d.clone()),
                        );
                    }
                    found
                })
                .collect()
        });
        for branch in branches {
            for diagram in branch {
                visitor(&diagram);
            }
        }
    }
}

fn format_estimate(estimate: u128) -> String {
    if estimate == u128::MAX {
        "more than 2^127".to_string()
    } else {
        estimate.to_string()
    }
}

/// All nonnegative lattice points with total degree at most `max_total`,
/// sorted lexicographically.
pub fn simplex_points(dimension: usize, max_total: i32) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    if max_total < 0 {
        return out;
    }
    let mut cursor = vec![0i32; dimension];
    loop {
        if cursor.iter().sum::<i32>() <= max_total {
            out.push(ExponentVector::new(cursor.clone()));
        }
        let mut axis = dimension;
        loop {
            if axis == 0 {
                out.sort();
                return out;
            }
            axis -= 1;
            cursor[axis] += 1;
            if cursor[axis] <= max_total {
                break;
            }
            cursor[axis] = 0;
        }
    }
}

/// The node-count lower bound for unique-source diagrams: `2d + 2` in three
/// variables, `(n - 1)d + 2` above.
pub fn node_count_bound(dimension: usize, size: u32) -> usize {
    if dimension == 3 {
        2 * size as usize + 2
    } else {
        (dimension - 1) * size as usize + 2
    }
}

/// Census of one size class of the enumeration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SizeCensus {
    pub size: u32,
    pub diagram_count: u64,
    pub min_node_count: usize,
    pub bound: usize,
    /// whether the minimum attains the bound exactly
    pub sharp: bool,
    pub minimizer_count: usize,
    pub all_minimizers_one_point_per_degree: bool,
    #[serde(skip)]
    pub minimizers: Vec<ValidDiagram>,
}

/// Outcome of a full bound-verification run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub dimension: usize,
    pub size_bound: u32,
    pub point_count: usize,
    pub assignment_estimate: String,
    pub valid_count: u64,
    pub per_size: Vec<SizeCensus>,
}

impl BoundReport {
    /// The census of the requested size.
    pub fn at_requested_size(&self) -> Option<&SizeCensus> {
        self.per_size.iter().find(|c| c.size == self.size_bound)
    }
}

/// Enumerates every unique-source diagram of size up to `size_bound` in
/// `dimension` variables, checks the node-count bound per size (a violation
/// is a theorem contradiction), and reports minima and minimizer censuses
/// keyed by actual size. For four or more variables every bound-attaining
/// diagram must have one support point per degree, and a violation of that
/// is a contradiction too.
pub fn verify_bound(
    dimension: usize,
    size_bound: u32,
    workers: usize,
) -> Result<BoundReport, OracleError> {
    if dimension < 3 {
        return Err(OracleError::InvalidInput {
            message: format!("the node-count bound is stated for dimension >= 3, got {dimension}"),
        });
    }
    let space = SearchSpace::new(dimension, size_bound)?;
    let mut per_size: BTreeMap<u32, (u64, usize, Vec<ValidDiagram>)> = BTreeMap::new();
    let mut valid_count = 0u64;
    let consume = |per_size: &mut BTreeMap<u32, (u64, usize, Vec<ValidDiagram>)>,
                   valid_count: &mut u64,
                   diagram: &ValidDiagram| {
        *valid_count += 1;
        let slot = per_size
            .entry(diagram.size)
            .or_insert((0, usize::MAX, Vec::new()));
        slot.0 += 1;
        if diagram.node_count < slot.1 {
            slot.1 = diagram.node_count;
            slot.2.clear();
        }
        if diagram.node_count == slot.1 {
            slot.2.push(diagram.clone());
        }
    };
    if workers <= 1 {
        space.visit_valid_diagrams(PruneMode::Pruned, |d| {
            consume(&mut per_size, &mut valid_count, d)
        });
    } else {
        space.visit_valid_diagrams_parallel(workers, |d| {
            consume(&mut per_size, &mut valid_count, d)
        });
    }
    let mut censuses = Vec::new();
    for (size, (diagram_count, min_node_count, minimizers)) in per_size {
        let bound = node_count_bound(dimension, size);
        if min_node_count < bound {
            let witness = &minimizers[0];
            return Err(OracleError::TheoremContradiction {
                what: format!(
                    "size-{size} diagram with {min_node_count} nodes beats the bound {bound}"
                ),
                dump: witness.to_newton_diagram(dimension).dump(),
            });
        }
        let sharp = min_node_count == bound;
        let all_one_point = minimizers.iter().all(ValidDiagram::one_point_per_degree);
        if dimension >= 4 && sharp && !all_one_point {
            let witness = minimizers
                .iter()
                .find(|m| !m.one_point_per_degree())
                .expect("a violating minimizer exists");
            return Err(OracleError::TheoremContradiction {
                what: format!(
                    "bound-attaining size-{size} diagram in dimension {dimension} is not one-point-per-degree"
                ),
                dump: witness.to_newton_diagram(dimension).dump(),
            });
        }
        censuses.push(SizeCensus {
            size,
            diagram_count,
            min_node_count,
            bound,
            sharp,
            minimizer_count: minimizers.len(),
            all_minimizers_one_point_per_degree: all_one_point,
            minimizers,
        });
    }
    Ok(BoundReport {
        dimension,
        size_bound,
        point_count: space.point_count(),
        assignment_estimate: space.assignment_estimate().to_string(),
        valid_count,
        per_size: censuses,
    })
}

/// Report of the small-simple-diagram survey.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimpleSurveyReport {
    pub max_height: u32,
    pub max_width: u32,
    /// distinct sign patterns a single row can take within the drift window
    pub row_patterns: usize,
    pub simple_count: u64,
    /// smallest observed `2f + e + c - (height + 1)`
    pub min_slack: i64,
    pub fills_checked: u64,
}

/// Enumerates every simple diagram with at most `max_height` rows whose
/// rows each span at most `max_width` columns (rows may drift rightward, as
/// faces of larger diagrams do), normalized so the bottom row starts at
/// column zero. Each one is checked for `2f + e + c >= height + 1` and for
/// a non-increasing fill; both failures are theorem contradictions.
pub fn survey_simple_diagrams(
    max_height: u32,
    max_width: u32,
) -> Result<SimpleSurveyReport, OracleError> {
    if max_height == 0 || max_width == 0 {
        return Err(OracleError::InvalidInput {
            message: "window sides must be positive".into(),
        });
    }
    if max_height > 3 || max_width > 3 {
        let cells = (max_height * (max_width + max_height - 1)) as usize;
        return Err(OracleError::BudgetExceeded {
            points: cells,
            estimate: 3u128.checked_pow(cells as u32).unwrap_or(u128::MAX),
            budget: 3u128.pow(15),
        });
    }
    let window = (max_width + max_height - 1) as i32;
    let patterns = row_patterns(window, max_width as i32);
    // translation-normalized bottom rows: support starting in column zero
    let bottoms: Vec<&Vec<Sign>> = patterns.iter().filter(|row| row[0].is_nonzero()).collect();
    let mut survey = SurveyState {
        simple_count: 0,
        fills_checked: 0,
        min_slack: i64::MAX,
        failure: None,
    };
    let mut stack: Vec<&Vec<Sign>> = Vec::with_capacity(max_height as usize);
    for bottom in bottoms {
        stack.push(bottom);
        survey_stack(&patterns, &mut stack, max_height as usize, &mut survey);
        stack.pop();
        if survey.failure.is_some() {
            break;
        }
    }
    if let Some(failure) = survey.failure {
        return Err(failure);
    }
    Ok(SimpleSurveyReport {
        max_height,
        max_width,
        row_patterns: patterns.len(),
        simple_count: survey.simple_count,
        min_slack: if survey.min_slack == i64::MAX {
            0
        } else {
            survey.min_slack
        },
        fills_checked: survey.fills_checked,
    })
}

struct SurveyState {
    simple_count: u64,
    fills_checked: u64,
    min_slack: i64,
    failure: Option<OracleError>,
}

/// All sign vectors over `window` columns whose nonzero span is at most
/// `max_span`, the empty row included.
fn row_patterns(window: i32, max_span: i32) -> Vec<Vec<Sign>> {
    let mut out = Vec::new();
    let mut signs = vec![Sign::Zero; window as usize];
    loop {
        let nonzero: Vec<usize> = signs
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_nonzero())
            .map(|(i, _)| i)
            .collect();
        if nonzero.is_empty() || nonzero[nonzero.len() - 1] - nonzero[0] < max_span as usize {
            out.push(signs.clone());
        }
        let mut i = 0;
        loop {
            if i == signs.len() {
                return out;
            }
            signs[i] = match signs[i] {
                Sign::Zero => Sign::P,
                Sign::P => Sign::N,
                Sign::N => {
                    signs[i] = Sign::Zero;
                    i += 1;
                    continue;
                }
            };
            break;
        }
    }
}

/// Every nonzero cell of the upper row needs a nonzero downward neighbor in
/// the lower row; otherwise it would be a bottom corner above the base.
fn rows_compatible(upper: &[Sign], lower: &[Sign]) -> bool {
    upper.iter().enumerate().all(|(col, sign)| {
        !sign.is_nonzero() || (col > 0 && lower[col - 1].is_nonzero()) || lower[col].is_nonzero()
    })
}

/// Checks the stack as a simple diagram, then extends it by every
/// compatible nonempty row.
fn survey_stack<'a>(
    patterns: &'a [Vec<Sign>],
    stack: &mut Vec<&'a Vec<Sign>>,
    max_height: usize,
    survey: &mut SurveyState,
) {
    let window = stack[0].len() as i32;
    let points = stack.iter().enumerate().flat_map(|(row, signs)| {
        signs
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_nonzero())
            .map(move |(col, &sign)| {
                // keep coordinates in the positive quadrant
                (
                    ExponentVector::new(vec![col as i32, window + row as i32 - col as i32]),
                    sign,
                )
            })
    });
    let simple =
        SimpleDiagram::new(NewtonDiagram::from_support(2, points)).expect("stacks are simple");
    survey.simple_count += 1;
    let count = simple.face_node_count();
    let slack = count.weighted() as i64 - (simple.height() as i64 + 1);
    survey.min_slack = survey.min_slack.min(slack);
    if slack < 0 {
        survey.failure = Some(OracleError::TheoremContradiction {
            what: format!(
                "simple diagram of height {} has 2f+e+c = {} < height+1",
                simple.height(),
                count.weighted()
            ),
            dump: simple.diagram().dump(),
        });
        return;
    }
    match simple.fill() {
        Ok(filled) => {
            survey.fills_checked += 1;
            if filled.face_node_count().weighted() > count.weighted() || !filled.is_filled() {
                survey.failure = Some(OracleError::TheoremContradiction {
                    what: "fill increased the boundary count or left the diagram unfilled".into(),
                    dump: simple.diagram().dump(),
                });
                return;
            }
        }
        Err(_) => {
            survey.failure = Some(OracleError::TheoremContradiction {
                what: "no non-increasing fill step existed".into(),
                dump: simple.diagram().dump(),
            });
            return;
        }
    }
    if stack.len() == max_height {
        return;
    }
    let below = *stack.last().expect("stack is nonempty");
    for pattern in patterns {
        if pattern.iter().any(|s| s.is_nonzero()) && rows_compatible(pattern, below) {
            stack.push(pattern);
            survey_stack(patterns, stack, max_height, survey);
            stack.pop();
            if survey.failure.is_some() {
                return;
            }
        }
    }
}

/// Cell `(row, a)` of the enumeration window, translated into the positive
/// quadrant: column `a`, total degree `width + row`.
fn window_cell(width: i32, row: i32, a: i32) -> ExponentVector {
    ExponentVector::new(vec![a, width + row - a])
}

/// Deterministic random simple diagrams for stress tests; rejection-sampled
/// from random sign windows up to 4 x 4.
pub fn random_simple_diagrams(count: usize, seed: u64) -> Vec<SimpleDiagram> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let width = rng.random_range(1..=4);
        let height = rng.random_range(1..=4i32);
        let mut points = Vec::new();
        for row in 0..height {
            for a in 0..width {
                let sign = match rng.random_range(0..10) {
                    0..=3 => Sign::P,
                    4..=6 => Sign::N,
                    _ => Sign::Zero,
                };
                if sign.is_nonzero() {
                    points.push((window_cell(width, row, a), sign));
                }
            }
        }
        if points.is_empty() {
            continue;
        }
        if let Ok(simple) = SimpleDiagram::new(NewtonDiagram::from_support(2, points)) {
            out.push(simple);
        }
    }
    out
}

/// Deterministic random diagrams with dimension 2..=4 and size at most 4,
/// for view and projection stress tests.
pub fn random_diagrams(count: usize, seed: u64) -> Vec<NewtonDiagram> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let dimension = rng.random_range(2..=4usize);
        let size = rng.random_range(1..=4i32);
        let mut points = Vec::new();
        for point in simplex_points(dimension, size - 1) {
            let sign = match rng.random_range(0..8) {
                0..=1 => Sign::P,
                2..=3 => Sign::N,
                _ => Sign::Zero,
            };
            if sign.is_nonzero() {
                points.push((point, sign));
            }
        }
        if points.is_empty() {
            continue;
        }
        out.push(NewtonDiagram::from_support(dimension, points));
    }
    out
}

/// Report of the hidden-node audit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HiddenNodeAuditReport {
    pub dimension: usize,
    pub size_bound: u32,
    pub diagrams_checked: u64,
    /// diagrams meeting the stronger hypothesis (a facial node in some
    /// complete simple set, or a top horizontal face with more than three
    /// nodes)
    pub strong_hypothesis_count: u64,
    /// smallest observed `max-deficit - required`
    pub min_margin: i64,
}

/// For every enumerated unique-source diagram in `dimension >= 4`, checks
/// that some view hides at least `size` nodes, and at least `size + 1` when
/// a complete simple set contains a facial node or a top horizontal face has
/// more than three nodes. Violations are theorem contradictions.
pub fn hidden_node_audit(
    dimension: usize,
    size_bound: u32,
) -> Result<HiddenNodeAuditReport, OracleError> {
    if dimension < 4 {
        return Err(OracleError::InvalidInput {
            message: format!("the hidden-node estimate needs dimension >= 4, got {dimension}"),
        });
    }
    let space = SearchSpace::new(dimension, size_bound)?;
    let mut checked = 0u64;
    let mut strong_count = 0u64;
    let mut min_margin = i64::MAX;
    let mut failure: Option<OracleError> = None;
    space.visit_valid_diagrams(PruneMode::Pruned, |valid| {
        if failure.is_some() {
            return;
        }
        checked += 1;
        let diagram = valid.to_newton_diagram(dimension);
        let own = diagram.node_count();
        let mut max_deficit = 0usize;
        for from in 0..dimension {
            for towards in 0..dimension {
                if from == towards {
                    continue;
                }
                let seen = diagram
                    .view(from, towards)
                    .expect("axes are valid")
                    .node_count();
                max_deficit = max_deficit.max(own - seen.min(own));
            }
        }
        let mut strong = false;
        'edges: for k in 0..dimension {
            for m in (k + 1)..dimension {
                match complete_simple_set(&diagram, k, m) {
                    Ok(set) => {
                        if set.iter().any(|f| f.face_node_count().facial > 0) {
                            strong = true;
                            break 'edges;
                        }
                    }
                    Err(err) => {
                        failure = Some(OracleError::Faces(err));
                        return;
                    }
                }
            }
        }
        if !strong {
            let faces = diagram.faces();
            let top_degree = faces
                .iter()
                .filter_map(|f| match f.kind {
                    crate::diagram::FaceKind::Horizontal { degree } => Some(degree),
                    _ => None,
                })
                .max();
            if let Some(top) = top_degree {
                strong = faces.iter().any(|f| {
                    matches!(f.kind, crate::diagram::FaceKind::Horizontal { degree } if degree == top)
                        && diagram.nodes_on(&f.points).len() > 3
                });
            }
        }
        if strong {
            strong_count += 1;
        }
        let required = valid.size as usize + usize::from(strong);
        min_margin = min_margin.min(max_deficit as i64 - required as i64);
        if max_deficit < required {
            failure = Some(OracleError::TheoremContradiction {
                what: format!(
                    "size-{} diagram hides at most {max_deficit} nodes, below the required {required}",
                    valid.size
                ),
                dump: diagram.dump(),
            });
        }
    });
    if let Some(err) = failure {
        return Err(err);
    }
    Ok(HiddenNodeAuditReport {
        dimension,
        size_bound,
        diagrams_checked: checked,
        strong_hypothesis_count: strong_count,
        min_margin: if min_margin == i64::MAX {
            0
        } else {
            min_margin
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Poly;

    #[test]
    fn simplex_point_counts_are_binomial() {
        // C(d-1+n, n) points for |alpha| <= d-1
        assert_eq!(simplex_points(3, 0).len(), 1);
        assert_eq!(simplex_points(3, 2).len(), 10);
        assert_eq!(simplex_points(4, 1).len(), 5);
        assert_eq!(simplex_points(2, 3).len(), 10);
    }

    #[test]
    fn budget_refusal_reports_the_estimate() {
        let err = SearchSpace::with_budget(3, 3, 1000).unwrap_err();
        match err {
            OracleError::BudgetExceeded {
                points,
                estimate,
                budget,
            } => {
                assert_eq!(points, 10);
                assert_eq!(estimate, 59049);
                assert_eq!(budget, 1000);
            }
            other => panic!("expected budget refusal, got {other}"),
        }
    }

    #[test]
    fn size_one_space_has_single_valid_diagram() {
        let space = SearchSpace::new(3, 1).unwrap();
        let found = space.collect_valid(PruneMode::Pruned);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].node_count, 4);
        assert_eq!(found[0].size, 1);
        assert_eq!(found[0].support.len(), 1);
        assert_eq!(found[0].support[0].1, Sign::P);
    }

    #[test]
    fn pruned_and_exhaustive_enumeration_agree() {
        for (n, d) in [(2usize, 2u32), (2, 3), (3, 1), (3, 2)] {
            let space = SearchSpace::new(n, d).unwrap();
            let pruned = space.collect_valid(PruneMode::Pruned);
            let exhaustive = space.collect_valid(PruneMode::Exhaustive);
            assert_eq!(pruned, exhaustive, "prune changed the result for ({n},{d})");
        }
    }

    #[test]
    fn dense_node_counts_match_the_diagram_module() {
        let space = SearchSpace::new(3, 2).unwrap();
        space.visit_valid_diagrams(PruneMode::Pruned, |valid| {
            let diagram = valid.to_newton_diagram(3);
            assert_eq!(diagram.node_count(), valid.node_count, "for {diagram:?}");
            assert_eq!(diagram.size(), valid.size);
            assert!(diagram.has_unique_source_at_origin());
        });
    }

    #[test]
    fn verify_bound_three_variables_small() {
        let report = verify_bound(3, 2, 1).unwrap();
        let census = report.at_requested_size().unwrap();
        assert_eq!(census.min_node_count, 6);
        assert_eq!(census.bound, 6);
        assert!(census.sharp);
        // the size-1 diagrams nested inside the run still meet their bound
        let size_one = report.per_size.iter().find(|c| c.size == 1).unwrap();
        assert_eq!(size_one.min_node_count, 4);
    }

    #[test]
    fn verify_bound_four_variables_size_one() {
        let report = verify_bound(4, 1, 1).unwrap();
        let census = report.at_requested_size().unwrap();
        assert_eq!(census.min_node_count, 5);
        assert!(census.sharp);
        assert!(census.all_minimizers_one_point_per_degree);
    }

    #[test]
    fn verify_bound_rejects_low_dimension() {
        assert!(matches!(
            verify_bound(2, 2, 1),
            Err(OracleError::InvalidInput { .. })
        ));
    }

    #[test]
    fn worker_counts_do_not_change_the_report() {
        let sequential = verify_bound(3, 2, 1).unwrap();
        let parallel = verify_bound(3, 2, 8).unwrap();
        assert_eq!(sequential, parallel);
    }

    #[test]
    fn survey_small_windows() {
        let survey = survey_simple_diagrams(1, 1).unwrap();
        // a single cell: P or N, both simple, both with count 2 = height + 1
        assert_eq!(survey.simple_count, 2);
        assert_eq!(survey.min_slack, 0);

        let survey = survey_simple_diagrams(2, 2).unwrap();
        assert_eq!(survey.simple_count, 78);
        assert_eq!(survey.fills_checked, survey.simple_count);
        assert!(survey.min_slack >= 0);
    }

    #[test]
    fn survey_refuses_large_windows() {
        assert!(matches!(
            survey_simple_diagrams(4, 3),
            Err(OracleError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn random_generators_are_deterministic() {
        assert_eq!(random_simple_diagrams(5, 9), random_simple_diagrams(5, 9));
        let a = random_diagrams(5, 11);
        let b = random_diagrams(5, 11);
        assert_eq!(a.len(), 5);
        assert_eq!(a, b);
    }

    #[test]
    fn unit_quotient_audit_in_four_variables() {
        // q = 1 for n = 4: five nodes, every view sees four, deficit 1 = d
        let d = NewtonDiagram::from_quotient(&Poly::one(4));
        assert_eq!(d.node_count(), 5);
        for from in 0..4 {
            for towards in 0..4 {
                if from != towards {
                    assert_eq!(d.view(from, towards).unwrap().node_count(), 4);
                }
            }
        }
        let report = hidden_node_audit(4, 1).unwrap();
        assert_eq!(report.diagrams_checked, 1);
        assert!(report.min_margin >= 0);
        assert!(matches!(
            hidden_node_audit(3, 1),
            Err(OracleError::InvalidInput { .. })
        ));
    }
}
