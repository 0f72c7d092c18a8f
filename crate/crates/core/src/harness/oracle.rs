//! Brute-force ground truth.
//!
//! All intersecting pairs of the instance are found once by an all-pairs
//! scan together with their intersection; a query keeps the pairs whose
//! intersection meets the range. Only the shared geometric primitives are
//! used, never the engines' structures.

use crate::geom::{
    box_intersect, disk_eps, lens_rect_intersects, rect_intersect, seg_pair_point, Box3, Disk, Orientation, PairId,
    Point2, RealRect, Rect2,
};
use crate::sets::PairReport;

use super::instance::{Instance, Objects, Query};

#[derive(Clone, Debug)]
enum Meet {
    Point(Point2),
    Rect(Rect2),
    Box(Box3),
    Lens(Disk, Disk),
}

#[derive(Clone, Debug)]
pub struct Oracle {
    pairs: Vec<(PairId, Meet)>,
}

fn all_pairs<T>(v: &[T], mut meet: impl FnMut(&T, &T) -> Option<Meet>) -> Vec<(PairId, Meet)> {
    let mut out = Vec::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if let Some(m) = meet(&v[i], &v[j]) {
                out.push((PairId::new(i, j).expect("distinct ids"), m));
            }
        }
    }
    out
}

impl Oracle {
    pub fn new(inst: &Instance) -> Oracle {
        let pairs = match &inst.objects {
            Objects::Segments(v) => all_pairs(v, |a, b| {
                let p = match (a.orientation, b.orientation) {
                    (Orientation::Horizontal, Orientation::Vertical) => seg_pair_point(a, b),
                    (Orientation::Vertical, Orientation::Horizontal) => seg_pair_point(b, a),
                    _ => return None,
                };
                p.ok().flatten().map(Meet::Point)
            }),
            Objects::Rects(v) => all_pairs(v, |a, b| rect_intersect(a, b).map(Meet::Rect)),
            Objects::Boxes(v) => all_pairs(v, |a, b| box_intersect(a, b).map(Meet::Box)),
            Objects::Disks(v) => {
                let eps = disk_eps();
                all_pairs(v, |a, b| {
                    let tol = eps * a.scale().max(b.scale());
                    ((a.cx - b.cx).hypot(a.cy - b.cy) <= a.r + b.r + tol).then_some(Meet::Lens(*a, *b))
                })
            }
        };
        Oracle { pairs }
    }

    /// Number of pairs intersecting anywhere.
    pub fn intersecting_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self, q: &Query) -> PairReport {
        let real = match q {
            Query::Rect(r) => Some(RealRect::from(*r)),
            Query::Box(_) => None,
        };
        let hit = |m: &Meet| match (m, q) {
            (Meet::Point(p), Query::Rect(r)) => r.contains(*p),
            (Meet::Rect(a), Query::Rect(r)) => a.intersects(r),
            (Meet::Box(a), Query::Box(b)) => a.intersects(b),
            (Meet::Lens(a, b), Query::Rect(_)) => lens_rect_intersects(a, b, real.as_ref().expect("planar query")),
            _ => false,
        };
        PairReport::from_pairs(self.pairs.iter().filter(|(_, m)| hit(m)).map(|(p, _)| *p).collect())
    }
}

/// Pairs of `inst` intersecting inside `q`.
pub fn oracle_pairs(inst: &Instance, q: &Query) -> PairReport {
    Oracle::new(inst).pairs(q)
}
