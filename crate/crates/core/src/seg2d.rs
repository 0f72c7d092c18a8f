//! Pairwise horizontal/vertical segment intersections inside a query rectangle.
//!
//! Every segment owns up to two *witness points*: the extreme crossings along
//! it (bottommost and topmost for a vertical segment, leftmost and rightmost
//! for a horizontal one). If a crossing lies in `Q`, either one of the two
//! segments has an endpoint in `Q` (so the witness nearest that endpoint is in
//! `Q`), or they cross `Q` completely in perpendicular directions. Seeds are
//! therefore the owners of witnesses in `Q` plus, when both kinds of complete
//! crossing exist, every vertical segment crossing `Q` top to bottom.
//!
//! Same-orientation overlaps are not reported.

use std::ops::ControlFlow;

use crate::geom::{AxisSeg2, ObjectId, Orientation, PairId, Point2, Rect2};
use crate::ortho::{CrossReport, RangeReport2D};
use crate::sets::{ObjectSet, PairReport, SeedSet};

#[derive(Clone, Debug)]
pub struct SegIndex {
    segments: ObjectSet<AxisSeg2>,
    witnesses: Vec<(Point2, ObjectId)>,
    witness_tree: RangeReport2D,
    /// Vertical segments; answers complete crossings of `Q` and, for a
    /// horizontal seed, the verticals it meets.
    verticals: CrossReport,
    horizontals: CrossReport,
}

impl SegIndex {
    pub fn build(segments: impl Into<ObjectSet<AxisSeg2>>) -> Self {
        let segments = segments.into();
        let indexed = || segments.iter().copied().zip(0..);
        let verticals = CrossReport::build(Orientation::Vertical, indexed());
        let horizontals = CrossReport::build(Orientation::Horizontal, indexed());

        let mut witnesses = Vec::new();
        for (id, s) in segments.iter().enumerate() {
            let others = match s.orientation {
                Orientation::Vertical => &horizontals,
                Orientation::Horizontal => &verticals,
            };
            // Position of each crossing along `s`.
            let mut lo = None;
            let mut hi = None;
            let _ = others.visit_crossing(&s.as_rect(), &mut |j| {
                let t = segments[j].fixed;
                lo = Some(lo.map_or(t, |v: i64| v.min(t)));
                hi = Some(hi.map_or(t, |v: i64| v.max(t)));
                ControlFlow::Continue(())
            });
            let at = |t| match s.orientation {
                Orientation::Vertical => Point2::new(s.fixed, t),
                Orientation::Horizontal => Point2::new(t, s.fixed),
            };
            if let (Some(lo), Some(hi)) = (lo, hi) {
                witnesses.push((at(lo), id));
                if hi != lo {
                    witnesses.push((at(hi), id));
                }
            }
        }
        let witness_tree = RangeReport2D::from_points(witnesses.iter().copied());
        SegIndex {
            segments,
            witnesses,
            witness_tree,
            verticals,
            horizontals,
        }
    }

    pub fn segments(&self) -> &ObjectSet<AxisSeg2> {
        &self.segments
    }

    pub fn witnesses(&self) -> &[(Point2, ObjectId)] {
        &self.witnesses
    }

    pub fn seeds(&self, q: &Rect2) -> SeedSet {
        let mut ids = self.witness_tree.query_rect(q);
        if self.verticals.any_crossing(q) && self.horizontals.any_crossing(q) {
            ids.extend(self.verticals.crossing(q));
        }
        SeedSet::from_ids(ids)
    }

    pub fn query(&self, q: &Rect2) -> PairReport {
        self.query_with_seeds(q).0
    }

    pub fn query_with_seeds(&self, q: &Rect2) -> (PairReport, SeedSet) {
        let seeds = self.seeds(q);
        let mut pairs = Vec::new();
        for i in seeds.iter() {
            let s = &self.segments[i];
            let Some(clipped) = s.clip(q) else { continue };
            let others = match s.orientation {
                Orientation::Vertical => &self.horizontals,
                Orientation::Horizontal => &self.verticals,
            };
            let _ = others.visit_crossing(&clipped.as_rect(), &mut |j| {
                pairs.extend(PairId::new(i, j));
                ControlFlow::Continue(())
            });
        }
        (PairReport::from_pairs(pairs), seeds)
    }

    pub fn storage(&self) -> usize {
        self.segments.len()
            + self.witness_tree.storage()
            + self.verticals.storage()
            + self.horizontals.storage()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::seg_pair_point;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn h(y: i64, x0: i64, x1: i64) -> AxisSeg2 {
        AxisSeg2::horizontal(y, x0, x1).unwrap()
    }
    fn v(x: i64, y0: i64, y1: i64) -> AxisSeg2 {
        AxisSeg2::vertical(x, y0, y1).unwrap()
    }
    fn rect(x0: i64, x1: i64, y0: i64, y1: i64) -> Rect2 {
        Rect2::new(x0, x1, y0, y1).unwrap()
    }

    fn crossing(a: &AxisSeg2, b: &AxisSeg2) -> Option<Point2> {
        match (a.orientation, b.orientation) {
            (Orientation::Horizontal, Orientation::Vertical) => seg_pair_point(a, b).unwrap(),
            (Orientation::Vertical, Orientation::Horizontal) => seg_pair_point(b, a).unwrap(),
            _ => None,
        }
    }

    fn oracle(segs: &[AxisSeg2], q: &Rect2) -> Vec<PairId> {
        let mut out = Vec::new();
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                if crossing(&segs[i], &segs[j]).is_some_and(|p| q.contains(p)) {
                    out.push(PairId::new(i, j).unwrap());
                }
            }
        }
        out
    }

    fn witness_oracle(segs: &[AxisSeg2]) -> Vec<(Point2, ObjectId)> {
        let mut out = Vec::new();
        for (i, s) in segs.iter().enumerate() {
            let pts: Vec<Point2> = segs.iter().filter_map(|t| crossing(s, t)).collect();
            let key = |p: &Point2| if s.is_horizontal() { p.x } else { p.y };
            if let (Some(a), Some(b)) = (pts.iter().min_by_key(|p| key(p)), pts.iter().max_by_key(|p| key(p))) {
                out.push((*a, i));
                if a != b {
                    out.push((*b, i));
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn random_segs(rng: &mut ChaCha8Rng, n: usize, m: i64, len: i64) -> Vec<AxisSeg2> {
        (0..n)
            .map(|_| {
                let (a, b) = (rng.gen_range(0..m), rng.gen_range(0..m));
                let l = rng.gen_range(0..len);
                if rng.gen_bool(0.5) { h(a, b, b + l) } else { v(a, b, b + l) }
            })
            .collect()
    }

    #[test]
    fn witness_examples() {
        let idx = SegIndex::build(vec![v(5, 0, 10), h(3, 0, 9), h(7, 4, 6), h(20, 0, 1)]);
        let mut w: Vec<_> = idx.witnesses().iter().filter(|(_, o)| *o == 0).map(|(p, _)| *p).collect();
        w.sort_unstable();
        assert_eq!(w, vec![Point2::new(5, 3), Point2::new(5, 7)]);
        assert!(idx.witnesses().iter().all(|(_, o)| *o != 3));
    }

    #[test]
    fn query_examples() {
        let idx = SegIndex::build(vec![h(2, 0, 10), v(5, 0, 4)]);
        assert_eq!(idx.query(&rect(4, 6, 1, 3)).to_arrays(), vec![[0, 1]]);
        assert!(idx.query(&rect(6, 8, 1, 3)).is_empty());
    }

    #[test]
    fn full_crossing_pair_is_seeded() {
        // Both segments cross Q completely; no witness lies inside.
        let idx = SegIndex::build(vec![h(5, -100, 100), v(5, -100, 100), h(90, -100, 100), v(90, -100, 100)]);
        let q = rect(0, 10, 0, 10);
        let seeds = idx.seeds(&q);
        assert!(seeds.contains(0) || seeds.contains(1));
        assert_eq!(idx.query(&q).to_arrays(), vec![[0, 1]]);
    }

    #[test]
    fn endpoint_inside_pair_seeded_by_witness() {
        let idx = SegIndex::build(vec![v(5, 3, 50), h(6, -100, 100), h(40, -100, 100)]);
        let q = rect(0, 10, 0, 10);
        assert!(idx.seeds(&q).contains(0));
        assert_eq!(idx.query(&q).to_arrays(), vec![[0, 1]]);
    }

    #[test]
    fn no_intersections_no_seeds() {
        let idx = SegIndex::build(vec![h(0, 0, 10), h(5, 0, 10), v(20, 0, 10)]);
        assert!(idx.seeds(&rect(-50, 50, -50, 50)).is_empty());
    }

    #[test]
    fn random_matches_oracle_with_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for (n, m, len) in [(0, 10, 5), (30, 40, 20), (500, 1000, 300)] {
            let segs = random_segs(&mut rng, n, m, len);
            let idx = SegIndex::build(segs.clone());
            let mut w = idx.witnesses().to_vec();
            w.sort_unstable();
            assert_eq!(w, witness_oracle(&segs));
            assert!(w.len() <= 2 * n);
            for _ in 0..100 {
                let (x, y) = (rng.gen_range(-5..m), rng.gen_range(-5..m));
                let q = rect(x, x + rng.gen_range(0..m / 2), y, y + rng.gen_range(0..m / 2));
                let want = oracle(&segs, &q);
                let (got, seeds) = idx.query_with_seeds(&q);
                assert_eq!(got.as_slice(), want.as_slice());
                assert!(seeds.len() <= 2 * want.len());
                for p in &want {
                    assert!(seeds.contains(p.i()) || seeds.contains(p.j()));
                }
            }
        }
    }
}
