//! Rectangle and box intersection queries.

use std::ops::ControlFlow;

use super::cross::CrossReport;
use super::enclosure::PointEnclosure2D;
use super::range::RangeReport2D;
use super::tree::{Hit, KeyTree, SegmentTree};
use crate::geom::{AxisSeg2, Box3, Orientation, Point2, Rect2};

/// Reports the rectangles overlapping a query rectangle.
///
/// A rectangle `r` overlaps `q` in x iff `r.x0 ∈ q.xs` or `r.x0 < q.x0 <= r.x1`,
/// and likewise in y. The four combinations are disjoint and each maps to one
/// sub-structure, so every rectangle is reported once:
///
/// | x case     | y case     | structure                                 |
/// |------------|------------|-------------------------------------------|
/// | corner in  | corner in  | range tree on lower-left corners           |
/// | corner in  | straddles  | left edges crossing the bottom edge of `q` |
/// | straddles  | corner in  | bottom edges crossing the left edge of `q` |
/// | straddles  | straddles  | enclosure of the lower-left corner of `q`  |
#[derive(Clone, Debug)]
pub struct RectIntersect2D {
    rects: Vec<Rect2>,
    payload: Vec<usize>,
    corners: RangeReport2D,
    left_edges: CrossReport,
    bottom_edges: CrossReport,
    enclosure: PointEnclosure2D,
}

impl RectIntersect2D {
    pub fn build(rects: impl IntoIterator<Item = (Rect2, usize)>) -> Self {
        let (rects, payload): (Vec<Rect2>, Vec<usize>) = rects.into_iter().unzip();
        let corners = RangeReport2D::from_points(rects.iter().zip(0..).map(|(r, k)| (r.corners()[0], k)));
        let left_edges = CrossReport::build(
            Orientation::Vertical,
            rects.iter().zip(0..).map(|(r, k)| (r.edges()[0], k)),
        );
        let bottom_edges = CrossReport::build(
            Orientation::Horizontal,
            rects.iter().zip(0..).map(|(r, k)| (r.edges()[2], k)),
        );
        let enclosure = PointEnclosure2D::build(rects.iter().copied().zip(0..));
        RectIntersect2D {
            rects,
            payload,
            corners,
            left_edges,
            bottom_edges,
            enclosure,
        }
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    pub fn visit(&self, q: &Rect2, f: &mut impl FnMut(usize) -> ControlFlow<()>) -> ControlFlow<()> {
        let (x0, y0) = (q.xs.lo, q.ys.lo);
        self.corners.visit_rect(q, &mut |k| f(self.payload[k]))?;
        if let Some(below) = y0.checked_sub(1) {
            self.left_edges.visit_raw(q.xs, below, y0, &mut |k| f(self.payload[k]))?;
        }
        if let Some(left) = x0.checked_sub(1) {
            self.bottom_edges.visit_raw(q.ys, left, x0, &mut |k| f(self.payload[k]))?;
        }
        self.enclosure.visit(Point2::new(x0, y0), &mut |k| {
            let r = &self.rects[k];
            if r.xs.lo < x0 && r.ys.lo < y0 {
                f(self.payload[k])?;
            }
            ControlFlow::Continue(())
        })
    }

    pub fn query(&self, q: &Rect2) -> Vec<usize> {
        let mut out = Vec::new();
        let _ = self.visit(q, &mut |id| {
            out.push(id);
            ControlFlow::Continue(())
        });
        out
    }

    /// Rectangles intersecting an axis-parallel segment.
    pub fn query_segment(&self, s: &AxisSeg2) -> Vec<usize> {
        self.query(&s.as_rect())
    }

    pub fn storage(&self) -> usize {
        self.rects.len()
            + self.corners.storage()
            + self.left_edges.storage()
            + self.bottom_edges.storage()
            + self.enclosure.storage()
    }
}

/// Reports the boxes overlapping a query box.
///
/// Boxes whose z-interval contains the query's bottom come from a segment
/// tree on z stabbed there; boxes whose bottom lies strictly inside the query's
/// z-range come from a tree on the bottoms. Both carry [`RectIntersect2D`]
/// structures over xy-projections.
#[derive(Clone, Debug)]
pub struct BoxIntersect3D {
    boxes: Vec<Box3>,
    payload: Vec<usize>,
    stab: SegmentTree<RectIntersect2D>,
    starts: KeyTree<i64, RectIntersect2D>,
}

impl BoxIntersect3D {
    pub fn build(boxes: impl IntoIterator<Item = (Box3, usize)>) -> Self {
        let (boxes, payload): (Vec<Box3>, Vec<usize>) = boxes.into_iter().unzip();
        let make = |ids: &[u32]| {
            RectIntersect2D::build(ids.iter().map(|&k| {
                let b = &boxes[k as usize];
                (Rect2 { xs: b.xs, ys: b.ys }, k as usize)
            }))
        };
        let zs: Vec<_> = boxes.iter().zip(0..).map(|(b, k)| (b.zs, k)).collect();
        let stab = SegmentTree::build(&zs, make);
        let starts = KeyTree::build(boxes.iter().zip(0..).map(|(b, k)| (b.zs.lo, k)).collect(), make);
        BoxIntersect3D {
            boxes,
            payload,
            stab,
            starts,
        }
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn visit(&self, q: &Box3, f: &mut impl FnMut(usize) -> ControlFlow<()>) -> ControlFlow<()> {
        let xy = Rect2 { xs: q.xs, ys: q.ys };
        self.stab
            .stab(q.zs.lo, &mut |ri: &RectIntersect2D| ri.visit(&xy, &mut |k| f(self.payload[k])))?;
        if q.zs.lo == q.zs.hi {
            return ControlFlow::Continue(());
        }
        self.starts.visit(q.zs.lo + 1, q.zs.hi, &mut |hit| match hit {
            Hit::Node(ri) => ri.visit(&xy, &mut |k| f(self.payload[k])),
            Hit::Item(k) => {
                let b = &self.boxes[k as usize];
                if b.xs.overlaps(&q.xs) && b.ys.overlaps(&q.ys) {
                    f(self.payload[k as usize])?;
                }
                ControlFlow::Continue(())
            }
        })
    }

    pub fn query(&self, q: &Box3) -> Vec<usize> {
        let mut out = Vec::new();
        let _ = self.visit(q, &mut |id| {
            out.push(id);
            ControlFlow::Continue(())
        });
        out
    }

    pub fn storage(&self) -> usize {
        self.boxes.len()
            + self.stab.assocs().iter().map(RectIntersect2D::storage).sum::<usize>()
            + self.starts.node_count()
            + self.starts.assocs().map(RectIntersect2D::storage).sum::<usize>()
    }
}
