//! Fixture checks: hand-built sign grids exercising each pictured
//! phenomenon (overhang, outside edges, views, stacked faces, fills, hidden
//! symmetric nodes), plus a replay of the recorded derived values against
//! the library.

use serde::Deserialize;

use newtondiag::diagram::{NewtonDiagram, NodeKind, Sign};
use newtondiag::exponent::ExponentVector;
use newtondiag::faces2d::{
    complete_simple_set, SimpleDiagram, SymmetricDiagram2D, SymmetricDichotomy,
};
use newtondiag::oracle::{hidden_node_audit, survey_simple_diagrams, verify_bound};
use newtondiag::whitney;
use newtondiag::Poly;

fn ev(entries: &[i32]) -> ExponentVector {
    ExponentVector::from(entries)
}

fn diagram(dimension: usize, points: &[(&[i32], Sign)]) -> NewtonDiagram {
    NewtonDiagram::from_support(dimension, points.iter().map(|&(p, s)| (ev(p), s)))
}

fn substituted_cubic_poly() -> Poly {
    let text =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/substituted_cubic.poly"))
            .unwrap();
    Poly::parse(text.trim(), 3).unwrap()
}

/// A three-dimensional diagram with a diagonally detached support point:
/// its (x1, x2) projection has a left overhang at (1, 1).
#[test]
fn overhang_fixture() {
    let d = diagram(
        3,
        &[
            (&[0, 0, 0], Sign::P),
            (&[0, 0, 1], Sign::P),
            (&[1, 1, 0], Sign::N),
        ],
    );
    let overhang = d.overhang().expect("fixture must overhang");
    assert_eq!(overhang.axes, (0, 1));
    assert_eq!(overhang.point, (1, 1));
    assert!(!d.has_unique_source_at_origin());
}

/// An exposed column with alternating signs: every interior alternation is
/// an outside-edge node; the bottom of the column is exempt.
#[test]
fn outside_edge_fixture() {
    let d = diagram(
        3,
        &[
            (&[1, 1, 0], Sign::P),
            (&[1, 1, 1], Sign::N),
            (&[1, 1, 2], Sign::P),
        ],
    );
    let nodes = d.outside_vertical_edge_nodes();
    assert_eq!(nodes, vec![ev(&[1, 1, 1]), ev(&[1, 1, 2])]);
    assert!(!d.has_unique_source_at_origin());
}

/// The view of the three-variable substitution diagram along (x2, x3): a
/// fully positive triangle of size 3 with a single source and four sinks.
#[test]
fn view_fixture() {
    let d = NewtonDiagram::from_quotient(&substituted_cubic_poly().divide_by_hyperplane().quotient);
    let view = d.view(1, 2).unwrap();
    assert_eq!(view.dimension(), 2);
    assert_eq!(view.size(), 3);
    assert_eq!(view.support_len(), 6);
    for a in 0..=2 {
        for b in 0..=(2 - a) {
            assert_eq!(view.sign(&ev(&[a, b])), Sign::P);
        }
    }
    let nodes = view.nodes();
    assert_eq!(nodes.len(), 5);
    assert_eq!(
        nodes.iter().filter(|r| r.kind == NodeKind::Source).count(),
        1
    );
    assert!(view.has_unique_source_at_origin());
    // hidden nodes: 8 in the diagram, 5 in the view
    assert_eq!(d.hidden_node_count(1, 2).unwrap(), 3);
}

/// A one-dimensional view row of the sharp cubic's diagram: positive at
/// positions 0..=2. Sink/source counting sees two nodes; the adjacent-pair
/// rule used for symmetric rows counts four.
#[test]
fn one_dimensional_view_fixture() {
    let p = Poly::parse("x^3 + 3*x*y + y^3", 2).unwrap();
    let d = NewtonDiagram::from_quotient(&p.divide_by_hyperplane().quotient);
    let view = d.view(0, 1).unwrap();
    for t in 0..=2 {
        assert_eq!(view.sign(&ev(&[t])), Sign::P);
    }
    assert_eq!(view.node_count(), 2);
    assert_eq!(newtondiag::faces2d::row_node_count(&view), 4);
    assert!(view.has_unique_source_at_origin());
    assert_eq!(d.node_count(), 4);
    assert_eq!(d.hidden_node_count(0, 1).unwrap(), 2);
}

/// A three-dimensional diagram whose (x1, x2) edge splits into two stacked
/// simple diagrams: the base face of height 2 and a single point above it.
#[test]
fn stacked_faces_fixture() {
    let d = diagram(
        3,
        &[
            (&[0, 0, 0], Sign::P),
            (&[1, 0, 0], Sign::P),
            (&[0, 1, 0], Sign::P),
            (&[0, 1, 1], Sign::P),
        ],
    );
    assert!(d.has_unique_source_at_origin());
    let set = complete_simple_set(&d, 0, 1).unwrap();
    assert_eq!(set.len(), 2);
    assert_eq!(set[0].height(), 2);
    assert_eq!(set[0].diagram().support_len(), 3);
    assert_eq!(set[1].height(), 1);
    assert_eq!(set[1].diagram().support_len(), 1);
    let total: u32 = set.iter().map(|f| f.height()).sum();
    assert_eq!(total, d.size());
}

/// Filling a bottom-row gap with an alternating run: both isolated corners
/// survive and the boundary count does not grow.
#[test]
fn bottom_gap_fill_fixture() {
    let simple = SimpleDiagram::new(diagram(2, &[(&[0, 3], Sign::P), (&[3, 0], Sign::P)])).unwrap();
    let before = simple.face_node_count().weighted();
    let filled = simple.fill().unwrap();
    assert!(filled.is_filled());
    assert!(filled.face_node_count().weighted() <= before);
    for a in 1..=2 {
        assert!(filled.diagram().sign(&ev(&[a, 3 - a])).is_nonzero());
    }
}

/// A one-sided row of zeros next to a single nonzero point: the run fills
/// alternately without growing the count.
#[test]
fn one_sided_fill_fixture() {
    let simple = SimpleDiagram::new(diagram(
        2,
        &[
            (&[0, 3], Sign::P),
            (&[1, 2], Sign::N),
            (&[2, 1], Sign::P),
            (&[3, 0], Sign::P),
            (&[0, 4], Sign::P),
        ],
    ))
    .unwrap();
    let before = simple.face_node_count().weighted();
    let filled = simple.fill().unwrap();
    assert!(filled.is_filled());
    assert!(filled.face_node_count().weighted() <= before);
    // the three remaining zeros of the second row are now signed
    for a in 1..=3 {
        assert!(filled.diagram().sign(&ev(&[a, 4 - a])).is_nonzero());
    }
}

/// A symmetric diagram with a same-sign pair node in one view that its
/// mirror view hides behind an opposite sign, forcing a deficit of at
/// least two.
#[test]
fn hidden_symmetric_node_fixture() {
    let d = SymmetricDiagram2D::from_signs(
        2,
        [
            (ev(&[0, 2, 0]), Sign::P),
            (ev(&[0, 1, 1]), Sign::N),
            (ev(&[1, 1, 0]), Sign::P),
        ],
    );
    // looking from x3 towards x2 keeps the (P,P) adjacency; looking from x2
    // towards x3 sees the N first and the pair node disappears
    let forward = d.view(2, 1).unwrap();
    let backward = d.view(1, 2).unwrap();
    assert_eq!(forward.node_count(), 3);
    assert_eq!(backward.node_count(), 2);
    assert_eq!(d.node_count(), 4);
    match d.view_deficit().unwrap() {
        SymmetricDichotomy::Deficit { deficit, .. } => assert!(deficit >= 2),
        other => panic!("expected a deficit, got {other:?}"),
    }
}

#[derive(Deserialize)]
struct DerivedEntry {
    id: String,
    command: String,
    #[serde(default)]
    quotient: Option<String>,
    #[serde(default)]
    remainder: Option<String>,
    #[serde(default)]
    support_points: Option<usize>,
    #[serde(default)]
    size: Option<u32>,
    #[serde(default)]
    node_count: Option<usize>,
    #[serde(default)]
    valid_count: Option<u64>,
    #[serde(default)]
    min_node_count: Option<usize>,
    #[serde(default)]
    minimizer_count: Option<usize>,
    #[serde(default)]
    term_count: Option<usize>,
    #[serde(default)]
    row_patterns: Option<usize>,
    #[serde(default)]
    simple_count: Option<u64>,
    #[serde(default)]
    min_slack: Option<i64>,
    #[serde(default)]
    diagrams_checked: Option<u64>,
    #[serde(default)]
    strong_hypothesis_count: Option<u64>,
    #[serde(default)]
    min_margin: Option<i64>,
}

/// Replays every recorded derived value against a fresh computation.
#[test]
fn derived_fixture_replay() {
    let raw = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/derived.json"
    ))
    .unwrap();
    let entries: Vec<DerivedEntry> = serde_json::from_str(&raw).unwrap();
    assert!(!entries.is_empty());
    for entry in entries {
        assert!(!entry.command.is_empty());
        match entry.id.as_str() {
            "qf-quotient" => {
                let p = Poly::parse("x^3 + 3*x*y + y^3", 2).unwrap();
                let division = p.divide_by_hyperplane();
                assert_eq!(division.quotient.to_string(), entry.quotient.unwrap());
                assert_eq!(division.remainder.to_string(), entry.remainder.unwrap());
            }
            "qf-diagram" => {
                let p = Poly::parse("x^3 + 3*x*y + y^3", 2).unwrap();
                let d = NewtonDiagram::from_quotient(&p.divide_by_hyperplane().quotient);
                assert_eq!(d.support_len(), entry.support_points.unwrap());
                assert_eq!(d.size(), entry.size.unwrap());
                assert_eq!(d.node_count(), entry.node_count.unwrap());
            }
            "substituted-cubic-diagram" => {
                let d = NewtonDiagram::from_quotient(&substituted_cubic_poly().divide_by_hyperplane().quotient);
                assert_eq!(d.support_len(), entry.support_points.unwrap());
                assert_eq!(d.size(), entry.size.unwrap());
                assert_eq!(d.node_count(), entry.node_count.unwrap());
            }
            "substituted-cubic-view-2-3" => {
                let d = NewtonDiagram::from_quotient(&substituted_cubic_poly().divide_by_hyperplane().quotient);
                let view = d.view(1, 2).unwrap();
                assert_eq!(view.support_len(), entry.support_points.unwrap());
                assert_eq!(view.size(), entry.size.unwrap());
                assert_eq!(view.node_count(), entry.node_count.unwrap());
            }
            id if id.starts_with("search-") => {
                let mut parts = id.trim_start_matches("search-").split('-');
                let n: usize = parts.next().unwrap().parse().unwrap();
                let d: u32 = parts.next().unwrap().parse().unwrap();
                let report = verify_bound(n, d, 1).unwrap();
                assert_eq!(report.valid_count, entry.valid_count.unwrap(), "{id}");
                let census = report.at_requested_size().unwrap();
                assert_eq!(census.min_node_count, entry.min_node_count.unwrap(), "{id}");
                assert_eq!(
                    census.minimizer_count,
                    entry.minimizer_count.unwrap(),
                    "{id}"
                );
            }
            "whitney-4-2" => {
                let trace = whitney::generate(4, 2, &whitney::Chooser::LexLargest).unwrap();
                assert_eq!(trace.polynomial.term_count(), entry.term_count.unwrap());
                assert_eq!(
                    whitney::quotient_diagram(&trace.polynomial).node_count(),
                    entry.node_count.unwrap()
                );
            }
            "lemma42-3-3" => {
                let survey = survey_simple_diagrams(3, 3).unwrap();
                assert_eq!(survey.row_patterns, entry.row_patterns.unwrap());
                assert_eq!(survey.simple_count, entry.simple_count.unwrap());
                assert_eq!(survey.min_slack, entry.min_slack.unwrap());
                assert_eq!(survey.fills_checked, survey.simple_count);
            }
            "audit-4-2" => {
                let audit = hidden_node_audit(4, 2).unwrap();
                assert_eq!(audit.diagrams_checked, entry.diagrams_checked.unwrap());
                assert_eq!(
                    audit.strong_hypothesis_count,
                    entry.strong_hypothesis_count.unwrap()
                );
                assert_eq!(audit.min_margin, entry.min_margin.unwrap());
            }
            other => panic!("unknown fixture id {other}"),
        }
    }
}
