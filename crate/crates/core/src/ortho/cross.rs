//! Crossing and windowing queries on axis-parallel segments.

use std::ops::ControlFlow;

use super::range::RangeReport2D;
use super::tree::{Hit, KeyTree, Pst};
use crate::geom::{AxisSeg2, Coord, Interval, Orientation, Rect2};

/// Segments of one orientation, each encoded as the point
/// `(fixed, span.lo, span.hi)`. A segment crosses a rectangle iff that point
/// lies in `[fixed range] × (-inf, lo_max] × [hi_min, +inf)`; the first side is
/// a tree on `fixed`, the two half-unbounded sides a priority search tree.
#[derive(Clone, Debug)]
pub struct CrossReport {
    orientation: Orientation,
    segs: Vec<(Coord, Interval)>,
    payload: Vec<usize>,
    tree: KeyTree<Coord, Pst>,
}

impl CrossReport {
    /// Segments whose orientation differs from `orientation` are ignored.
    pub fn build(orientation: Orientation, segs: impl IntoIterator<Item = (AxisSeg2, usize)>) -> Self {
        let (segs, payload): (Vec<(Coord, Interval)>, Vec<usize>) = segs
            .into_iter()
            .filter(|(s, _)| s.orientation == orientation)
            .map(|(s, id)| ((s.fixed, s.span), id))
            .unzip();
        let items = segs.iter().enumerate().map(|(k, s)| (s.0, k as u32)).collect();
        let tree = KeyTree::build(items, |ids| {
            Pst::build(ids.iter().map(|&k| {
                let iv = segs[k as usize].1;
                (iv.lo, iv.hi, k)
            }).collect())
        });
        CrossReport {
            orientation,
            segs,
            payload,
            tree,
        }
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn len(&self) -> usize {
        self.segs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    /// Segments with `fixed ∈ fixed_range`, `span.lo <= lo_max` and `span.hi >= hi_min`.
    pub fn visit_raw(
        &self,
        fixed_range: Interval,
        lo_max: Coord,
        hi_min: Coord,
        f: &mut impl FnMut(usize) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        self.tree.visit(fixed_range.lo, fixed_range.hi, &mut |hit| match hit {
            Hit::Node(pst) => pst.query(lo_max, hi_min, &mut |k| f(self.payload[k as usize])),
            Hit::Item(k) => {
                let iv = self.segs[k as usize].1;
                if iv.lo <= lo_max && iv.hi >= hi_min {
                    f(self.payload[k as usize])?;
                }
                ControlFlow::Continue(())
            }
        })
    }

    fn crossing_params(&self, q: &Rect2) -> (Interval, Coord, Coord) {
        match self.orientation {
            Orientation::Vertical => (q.xs, q.ys.lo, q.ys.hi),
            Orientation::Horizontal => (q.ys, q.xs.lo, q.xs.hi),
        }
    }

    /// Visit segments that cross `q` completely along their own direction.
    /// With a degenerate `q` (a perpendicular segment) these are exactly the
    /// segments intersecting it.
    pub fn visit_crossing(&self, q: &Rect2, f: &mut impl FnMut(usize) -> ControlFlow<()>) -> ControlFlow<()> {
        let (fr, lo_max, hi_min) = self.crossing_params(q);
        self.visit_raw(fr, lo_max, hi_min, f)
    }

    pub fn crossing(&self, q: &Rect2) -> Vec<usize> {
        let mut out = Vec::new();
        let _ = self.visit_crossing(q, &mut |id| {
            out.push(id);
            ControlFlow::Continue(())
        });
        out
    }

    pub fn any_crossing(&self, q: &Rect2) -> bool {
        self.visit_crossing(q, &mut |_| ControlFlow::Break(())).is_break()
    }

    pub fn storage(&self) -> usize {
        self.segs.len() + self.tree.node_count() + self.tree.assocs().map(Pst::len).sum::<usize>()
    }
}

/// Reports the segments (of either orientation) that intersect a query
/// rectangle: those with an endpoint inside plus those crossing it with both
/// endpoints strictly outside. The two parts are disjoint.
#[derive(Clone, Debug)]
pub struct SegWindowing {
    segs: Vec<AxisSeg2>,
    payload: Vec<usize>,
    ends: RangeReport2D<Coord>,
    vertical: CrossReport,
    horizontal: CrossReport,
}

impl SegWindowing {
    pub fn build(segs: impl IntoIterator<Item = (AxisSeg2, usize)>) -> Self {
        let (segs, payload): (Vec<AxisSeg2>, Vec<usize>) = segs.into_iter().unzip();
        let ends = RangeReport2D::from_points(
            segs.iter()
                .enumerate()
                .flat_map(|(k, s)| s.endpoints().into_iter().zip(0..).map(move |(p, e)| (p, 2 * k + e))),
        );
        let indexed = || segs.iter().copied().zip(0..);
        SegWindowing {
            vertical: CrossReport::build(Orientation::Vertical, indexed()),
            horizontal: CrossReport::build(Orientation::Horizontal, indexed()),
            ends,
            segs,
            payload,
        }
    }

    pub fn len(&self) -> usize {
        self.segs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn visit(&self, q: &Rect2, f: &mut impl FnMut(usize) -> ControlFlow<()>) -> ControlFlow<()> {
        self.ends.visit_rect(q, &mut |code| {
            // Payload is 2 * segment + endpoint; report through the low end
            // when it is inside, else through the high end.
            let (k, end) = (code / 2, code % 2);
            if end == 0 || !q.contains(self.segs[k].endpoints()[0]) {
                f(self.payload[k])?;
            }
            ControlFlow::Continue(())
        })?;
        let strict = |lo: Coord, hi: Coord| (lo.saturating_sub(1), hi.saturating_add(1));
        let (lo_max, hi_min) = strict(q.ys.lo, q.ys.hi);
        self.vertical.visit_raw(q.xs, lo_max, hi_min, &mut |k| f(self.payload[k]))?;
        let (lo_max, hi_min) = strict(q.xs.lo, q.xs.hi);
        self.horizontal.visit_raw(q.ys, lo_max, hi_min, &mut |k| f(self.payload[k]))
    }

    pub fn query(&self, q: &Rect2) -> Vec<usize> {
        let mut out = Vec::new();
        let _ = self.visit(q, &mut |id| {
            out.push(id);
            ControlFlow::Continue(())
        });
        out
    }

    pub fn storage(&self) -> usize {
        self.segs.len() + self.ends.storage() + self.vertical.storage() + self.horizontal.storage()
    }
}
