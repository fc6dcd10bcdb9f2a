//! Views of a diagram along an axis pair, hidden-node counts, overhang and
//! outside vertical edges.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::exponent::ExponentVector;

use super::{NewtonDiagram, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ViewError {
    #[error("invalid axis pair ({from}, {towards}) for dimension {dimension}")]
    InvalidAxisPair {
        from: usize,
        towards: usize,
        dimension: usize,
    },
    #[error("views require dimension at least 2, got {dimension}")]
    DimensionTooSmall { dimension: usize },
}

/// Witness that a projection of the support has an overhang point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overhang {
    /// Axis pair of the projection (zero-based).
    pub axes: (usize, usize),
    /// The overhanging projected point.
    pub point: (i32, i32),
}

impl NewtonDiagram {
    /// The view along the `(from, towards)` edge: an `(n-1)`-dimensional
    /// diagram whose value on each collapsed line is the sign at the point
    /// with the smallest `from`-exponent, or zero when the whole line is
    /// zero. Axes are zero-based and may come in either order.
    pub fn view(&self, from: usize, towards: usize) -> Result<NewtonDiagram, ViewError> {
        let n = self.dimension;
        if n < 2 {
            return Err(ViewError::DimensionTooSmall { dimension: n });
        }
        if from == towards || from >= n || towards >= n {
            return Err(ViewError::InvalidAxisPair {
                from,
                towards,
                dimension: n,
            });
        }
        // Collapsed coordinates: drop `towards`; the slot that held `from`
        // carries the combined exponent.
        let slot = if from < towards { from } else { from - 1 };
        let mut best: BTreeMap<ExponentVector, (i32, Sign)> = BTreeMap::new();
        for (point, sign) in self.support() {
            let a = point.entry(from);
            let combined = a + point.entry(towards);
            let mut entries: Vec<i32> = point
                .entries()
                .iter()
                .enumerate()
                .filter(|&(axis, _)| axis != towards)
                .map(|(_, &e)| e)
                .collect();
            entries[slot] = combined;
            let key = ExponentVector::new(entries);
            match best.entry(key) {
                std::collections::btree_map::Entry::Vacant(slot) => {
                    slot.insert((a, sign));
                }
                std::collections::btree_map::Entry::Occupied(mut slot) => {
                    if a < slot.get().0 {
                        *slot.get_mut() = (a, sign);
                    }
                }
            }
        }
        Ok(NewtonDiagram::from_support(
            n - 1,
            best.into_iter().map(|(key, (_, sign))| (key, sign)),
        ))
    }

    /// The lattice point of this diagram a view point collapses to: the
    /// first nonzero point along its line, or `None` when the line is zero.
    pub fn view_preimage(
        &self,
        from: usize,
        towards: usize,
        view_point: &ExponentVector,
    ) -> Option<ExponentVector> {
        let n = self.dimension;
        let slot = if from < towards { from } else { from - 1 };
        let combined = view_point.entry(slot);
        for a in 0..=combined.max(0) {
            let mut entries = Vec::with_capacity(n);
            let mut source = view_point
                .entries()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != slot);
            for axis in 0..n {
                if axis == from {
                    entries.push(a);
                } else if axis == towards {
                    entries.push(combined - a);
                } else {
                    let (_, &e) = source.next().expect("view point has n-1 coordinates");
                    entries.push(e);
                }
            }
            let candidate = ExponentVector::new(entries);
            if self.sign(&candidate).is_nonzero() {
                return Some(candidate);
            }
        }
        None
    }

    /// `#(D) - #(V(D, from, towards))`, which is never negative.
    pub fn hidden_node_count(&self, from: usize, towards: usize) -> Result<usize, ViewError> {
        let view = self.view(from, towards)?;
        let own = self.node_count();
        let seen = view.node_count();
        assert!(
            seen <= own,
            "view ({from},{towards}) of {self:?} has {seen} nodes, more than the diagram's {own}"
        );
        Ok(own - seen)
    }

    /// Searches every projection of the support for an overhang point.
    ///
    /// A projected point `(a, b) != (0, 0)` is a left overhang when `(a, b-1)`
    /// is outside the projection and no `(a-1, y)` with `y >= b` is in it;
    /// right overhang is the mirror image, covered here by scanning both
    /// orders of every axis pair.
    pub fn overhang(&self) -> Option<Overhang> {
        let n = self.dimension;
        if n < 2 {
            return None;
        }
        for k in 0..n {
            for m in 0..n {
                if k == m {
                    continue;
                }
                let projection: BTreeSet<(i32, i32)> = self
                    .support()
                    .map(|(point, _)| (point.entry(k), point.entry(m)))
                    .collect();
                for &(a, b) in &projection {
                    if (a, b) == (0, 0) {
                        continue;
                    }
                    if projection.contains(&(a, b - 1)) {
                        continue;
                    }
                    if projection.iter().any(|&(x, y)| x == a - 1 && y >= b) {
                        continue;
                    }
                    return Some(Overhang {
                        axes: (k, m),
                        point: (a, b),
                    });
                }
            }
        }
        None
    }

    pub fn has_overhang(&self) -> bool {
        self.overhang().is_some()
    }

    /// Non-bottom nodes lying on outside vertical edges, sorted.
    ///
    /// An outside vertical edge is a run of support points descending in one
    /// axis from a zero cap, with every sideways-down neighbor of the cap
    /// and of the run zero. The lowest element of a run with nothing below
    /// it is its bottom node and is exempt.
    pub fn outside_vertical_edge_nodes(&self) -> Vec<ExponentVector> {
        let n = self.dimension;
        let mut found = BTreeSet::new();
        for axis in 0..n {
            // group support points into maximal runs along `axis`
            let mut tops = Vec::new();
            for (point, _) in self.support() {
                if !self.sign(&point.up(axis)).is_nonzero() {
                    tops.push(point.clone());
                }
            }
            for top in tops {
                let cap = top.up(axis);
                let side_clear = |point: &ExponentVector| {
                    (0..n).all(|j| j == axis || !self.sign(&point.down(j)).is_nonzero())
                };
                if !side_clear(&cap) {
                    continue;
                }
                let mut current = top;
                while self.sign(&current).is_nonzero() && side_clear(&current) {
                    let below = current.down(axis);
                    let is_bottom = !self.sign(&below).is_nonzero();
                    if !is_bottom && self.classify_node(&current).is_some() {
                        found.insert(current.clone());
                    }
                    if is_bottom {
                        break;
                    }
                    current = below;
                }
            }
        }
        found.into_iter().collect()
    }
}
