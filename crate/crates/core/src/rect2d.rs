//! Pairwise rectangle intersections inside a query rectangle.
//!
//! A rectangle owns up to ten witness segments: on each edge `e`, the two
//! extreme connected pieces of `e` covered by other rectangles, and in its
//! interior the rightmost vertical and topmost horizontal foreign edge that
//! crosses it completely, clipped to it. Seeds are the owners of witnesses
//! meeting `Q`, the rectangles whose vertical edges cross `Q` when edges of
//! both orientations do, and the rectangles containing a corner of `Q`.

use std::ops::ControlFlow;

use crate::geom::{rect_intersect, AxisSeg2, Coord, Interval, ObjectId, Orientation, PairId, Rect2};
use crate::ortho::{CrossReport, PointEnclosure2D, RectIntersect2D, SegWindowing};
use crate::sets::{ObjectSet, PairReport, SeedSet};

#[derive(Clone, Debug)]
pub struct RectIndex {
    rects: ObjectSet<Rect2>,
    witnesses: Vec<(AxisSeg2, ObjectId)>,
    d1: SegWindowing,
    /// Vertical edges; payload `2 * rect + side`.
    d2: CrossReport,
    /// Horizontal edges; payload `2 * rect + side`.
    d3: CrossReport,
    d4: PointEnclosure2D,
    d5: RectIntersect2D,
}

/// Merge closed intervals into connected pieces and return the first and last.
fn extreme_pieces(mut ivs: Vec<Interval>) -> Option<(Interval, Interval)> {
    ivs.sort_unstable_by_key(|iv| (iv.lo, iv.hi));
    let mut it = ivs.into_iter();
    let first_iv = it.next()?;
    let mut first: Option<Interval> = None;
    let mut cur = first_iv;
    for iv in it {
        if iv.lo <= cur.hi {
            cur.hi = cur.hi.max(iv.hi);
        } else {
            first.get_or_insert(cur);
            cur = iv;
        }
    }
    Some((first.unwrap_or(cur), cur))
}

impl RectIndex {
    pub fn build(rects: impl Into<ObjectSet<Rect2>>) -> Self {
        let rects = rects.into();
        let d5 = RectIntersect2D::build(rects.iter().copied().zip(0..));
        let edges = || {
            rects
                .iter()
                .enumerate()
                .flat_map(|(i, r)| r.edges().into_iter().zip(0..).map(move |(e, k)| (e, 2 * i + k % 2)))
        };
        let d2 = CrossReport::build(Orientation::Vertical, edges());
        let d3 = CrossReport::build(Orientation::Horizontal, edges());
        let d4 = PointEnclosure2D::build(rects.iter().copied().zip(0..));

        let mut witnesses = Vec::new();
        for (i, r) in rects.iter().enumerate() {
            for e in r.edges() {
                let covered: Vec<Interval> = d5
                    .query_segment(&e)
                    .into_iter()
                    .filter(|&j| j != i)
                    .filter_map(|j| {
                        let other = &rects[j];
                        let along = if e.is_horizontal() { other.xs } else { other.ys };
                        along.intersect(&e.span)
                    })
                    .collect();
                if let Some((a, b)) = extreme_pieces(covered) {
                    witnesses.push((AxisSeg2 { span: a, ..e }, i));
                    if b != a {
                        witnesses.push((AxisSeg2 { span: b, ..e }, i));
                    }
                }
            }
            let extreme = |d: &CrossReport| {
                let mut best: Option<Coord> = None;
                let _ = d.visit_crossing(r, &mut |code| {
                    if code / 2 != i {
                        let e = rects[code / 2].edges()[if d.orientation() == Orientation::Vertical {
                            code % 2
                        } else {
                            2 + code % 2
                        }];
                        best = Some(best.map_or(e.fixed, |b| b.max(e.fixed)));
                    }
                    ControlFlow::Continue(())
                });
                best
            };
            if let Some(x) = extreme(&d2) {
                witnesses.push((AxisSeg2 { orientation: Orientation::Vertical, fixed: x, span: r.ys }, i));
            }
            if let Some(y) = extreme(&d3) {
                witnesses.push((AxisSeg2 { orientation: Orientation::Horizontal, fixed: y, span: r.xs }, i));
            }
        }
        let d1 = SegWindowing::build(witnesses.iter().copied());
        RectIndex {
            rects,
            witnesses,
            d1,
            d2,
            d3,
            d4,
            d5,
        }
    }

    pub fn rects(&self) -> &ObjectSet<Rect2> {
        &self.rects
    }

    pub fn witnesses(&self) -> &[(AxisSeg2, ObjectId)] {
        &self.witnesses
    }

    pub fn seeds(&self, q: &Rect2) -> SeedSet {
        let mut ids = self.d1.query(q);
        if self.d2.any_crossing(q) && self.d3.any_crossing(q) {
            ids.extend(self.d2.crossing(q).into_iter().map(|code| code / 2));
        }
        for c in q.corners() {
            ids.extend(self.d4.query(c));
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
            let Some(clipped) = rect_intersect(&self.rects[i], q) else { continue };
            let _ = self.d5.visit(&clipped, &mut |j| {
                if self.rects[j].intersects(&clipped) {
                    pairs.extend(PairId::new(i, j));
                }
                ControlFlow::Continue(())
            });
        }
        (PairReport::from_pairs(pairs), seeds)
    }

    pub fn storage(&self) -> usize {
        self.rects.len()
            + self.witnesses.len()
            + self.d1.storage()
            + self.d2.storage()
            + self.d3.storage()
            + self.d4.storage()
            + self.d5.storage()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rect(x0: i64, x1: i64, y0: i64, y1: i64) -> Rect2 {
        Rect2::new(x0, x1, y0, y1).unwrap()
    }

    fn oracle(rects: &[Rect2], q: &Rect2) -> Vec<PairId> {
        let mut out = Vec::new();
        for i in 0..rects.len() {
            for j in i + 1..rects.len() {
                let (a, b) = (&rects[i], &rects[j]);
                let xs = a.xs.lo.max(b.xs.lo).max(q.xs.lo) <= a.xs.hi.min(b.xs.hi).min(q.xs.hi);
                let ys = a.ys.lo.max(b.ys.lo).max(q.ys.lo) <= a.ys.hi.min(b.ys.hi).min(q.ys.hi);
                if xs && ys {
                    out.push(PairId::new(i, j).unwrap());
                }
            }
        }
        out
    }

    /// Witnesses recomputed by scanning all pairs; covered pieces are found by
    /// marking the covered half-unit cells of the edge.
    fn witness_oracle(rects: &[Rect2]) -> Vec<(AxisSeg2, ObjectId)> {
        let mut out = Vec::new();
        for (i, r) in rects.iter().enumerate() {
            for e in r.edges() {
                let len = (e.span.hi - e.span.lo) as usize;
                // Cell 2t is the point lo + t, cell 2t + 1 the open gap after it.
                let mut cells = vec![false; 2 * len + 1];
                for (j, o) in rects.iter().enumerate() {
                    if j == i || !o.intersects(&e.as_rect()) {
                        continue;
                    }
                    let along = if e.is_horizontal() { o.xs } else { o.ys };
                    let lo = (along.lo.max(e.span.lo) - e.span.lo) as usize;
                    let hi = (along.hi.min(e.span.hi) - e.span.lo) as usize;
                    cells[2 * lo..=2 * hi].iter_mut().for_each(|c| *c = true);
                }
                let mut pieces = Vec::new();
                let mut c = 0;
                while c < cells.len() {
                    if cells[c] {
                        let start = c;
                        while c + 1 < cells.len() && cells[c + 1] {
                            c += 1;
                        }
                        let iv = Interval::new(e.span.lo + start as i64 / 2, e.span.lo + c as i64 / 2).unwrap();
                        pieces.push(iv);
                    }
                    c += 1;
                }
                if let (Some(a), Some(b)) = (pieces.first(), pieces.last()) {
                    out.push((AxisSeg2 { span: *a, ..e }, i));
                    if a != b {
                        out.push((AxisSeg2 { span: *b, ..e }, i));
                    }
                }
            }
            let mut right = None;
            let mut top = None;
            for (j, o) in rects.iter().enumerate() {
                if j == i {
                    continue;
                }
                for x in [o.xs.lo, o.xs.hi] {
                    if r.xs.contains(x) && o.ys.covers(&r.ys) {
                        right = right.max(Some(x));
                    }
                }
                for y in [o.ys.lo, o.ys.hi] {
                    if r.ys.contains(y) && o.xs.covers(&r.xs) {
                        top = top.max(Some(y));
                    }
                }
            }
            if let Some(x) = right {
                out.push((AxisSeg2::vertical(x, r.ys.lo, r.ys.hi).unwrap(), i));
            }
            if let Some(y) = top {
                out.push((AxisSeg2::horizontal(y, r.xs.lo, r.xs.hi).unwrap(), i));
            }
        }
        out.sort_unstable_by_key(|(s, i)| (*i, s.orientation == Orientation::Horizontal, s.fixed, s.span.lo, s.span.hi));
        out
    }

    fn sorted(mut w: Vec<(AxisSeg2, ObjectId)>) -> Vec<(AxisSeg2, ObjectId)> {
        w.sort_unstable_by_key(|(s, i)| (*i, s.orientation == Orientation::Horizontal, s.fixed, s.span.lo, s.span.hi));
        w
    }

    fn check_instance(rects: &[Rect2], q: &Rect2) {
        let idx = RectIndex::build(rects.to_vec());
        let want = oracle(rects, q);
        let (got, seeds) = idx.query_with_seeds(q);
        assert_eq!(got.as_slice(), want.as_slice());
        for p in &want {
            assert!(seeds.contains(p.i()) || seeds.contains(p.j()), "pair {p:?} not covered");
        }
        assert!(seeds.len() <= 2 * want.len() + 4);
    }

    #[test]
    fn interior_witness_example() {
        let idx = RectIndex::build(vec![rect(0, 10, 0, 10), rect(2, 4, -1, 11)]);
        let interior = AxisSeg2::vertical(4, 0, 10).unwrap();
        assert!(idx.witnesses().contains(&(interior, 0)));
        assert!(!idx.witnesses().contains(&(AxisSeg2::vertical(2, 0, 10).unwrap(), 0)));
    }

    #[test]
    fn isolated_rect_has_no_witnesses() {
        let idx = RectIndex::build(vec![rect(0, 1, 0, 1), rect(5, 6, 5, 6)]);
        assert!(idx.witnesses().is_empty());
        assert!(idx.seeds(&rect(-10, -5, -10, -5)).is_empty());
    }

    #[test]
    fn query_examples() {
        let idx = RectIndex::build(vec![rect(0, 3, 0, 3), rect(2, 5, 2, 5)]);
        assert_eq!(idx.query(&rect(0, 5, 0, 5)).to_arrays(), vec![[0, 1]]);
        assert!(idx.query(&rect(4, 5, 0, 1)).is_empty());
    }

    #[test]
    fn corner_containment_seeds() {
        let idx = RectIndex::build(vec![rect(0, 10, 0, 10)]);
        assert!(idx.seeds(&rect(5, 20, 5, 20)).contains(0));
    }

    #[test]
    fn extreme_pieces_merge_touching() {
        let iv = |a, b| Interval::new(a, b).unwrap();
        assert_eq!(extreme_pieces(vec![iv(4, 6), iv(0, 2), iv(2, 3)]), Some((iv(0, 3), iv(4, 6))));
        assert_eq!(extreme_pieces(vec![iv(1, 1)]), Some((iv(1, 1), iv(1, 1))));
        assert_eq!(extreme_pieces(vec![]), None);
    }

    #[test]
    fn case_a_endpoint_inside() {
        check_instance(&[rect(0, 10, 0, 10), rect(5, 15, 5, 15)], &rect(3, 12, 3, 12));
    }

    #[test]
    fn case_b1_corner_of_query() {
        check_instance(&[rect(0, 10, 0, 10), rect(2, 8, 0, 10)], &rect(7, 9, 3, 4));
        check_instance(&[rect(0, 10, 0, 10), rect(2, 8, 2, 8)], &rect(3, 4, 3, 4));
    }

    #[test]
    fn case_b2_crossings_both_ways() {
        // Only the crossing step can seed: every witness is outside Q and no
        // rectangle holds a corner of Q.
        let rects = [
            rect(-5, 20, 7, 8),
            rect(4, 6, -5, 20),
            rect(-5, -3, -10, 30),
            rect(18, 20, -10, 30),
            rect(0, 10, -6, -4),
            rect(0, 10, 18, 22),
        ];
        let q = rect(3, 7, 6, 9);
        let idx = RectIndex::build(rects.to_vec());
        assert!(idx.witnesses().iter().all(|(w, _)| !w.intersects_rect(&q)));
        assert!(idx.seeds(&q).contains(1));
        check_instance(&rects, &q);
    }

    #[test]
    fn case_b3i_same_rect_edges() {
        // The two vertical edges of I come from rectangle 0; rectangle 1 is
        // found through its interior witness.
        let rects = [rect(4, 6, -20, 20), rect(3, 7, -10, 10), rect(0, 10, 15, 25), rect(0, 10, -25, -15)];
        let q = rect(2, 8, -2, 2);
        let idx = RectIndex::build(rects.to_vec());
        let seeds = idx.seeds(&q);
        assert!(seeds.contains(1));
        assert!(!seeds.contains(0));
        check_instance(&rects, &q);
    }

    #[test]
    fn case_b3ii_edges_of_both() {
        let rects = [rect(3, 6, -20, 10), rect(4, 7, -10, 20), rect(0, 10, -30, -15)];
        let q = rect(2, 8, -2, 2);
        let idx = RectIndex::build(rects.to_vec());
        assert!(idx.seeds(&q).contains(0));
        check_instance(&rects, &q);
    }

    #[test]
    fn random_matches_oracles() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for (n, m) in [(0, 10), (1, 10), (40, 30), (300, 400)] {
            let rects: Vec<Rect2> = (0..n)
                .map(|_| {
                    let (x, y) = (rng.gen_range(0..m), rng.gen_range(0..m));
                    rect(x, x + rng.gen_range(0..m / 4), y, y + rng.gen_range(0..m / 4))
                })
                .collect();
            let idx = RectIndex::build(rects.clone());
            assert_eq!(sorted(idx.witnesses().to_vec()), witness_oracle(&rects));
            let mut per = vec![0; n];
            idx.witnesses().iter().for_each(|(_, o)| per[*o] += 1);
            assert!(per.iter().all(|&c| c <= 10));
            for _ in 0..100 {
                let (x, y) = (rng.gen_range(-5..m), rng.gen_range(-5..m));
                let q = rect(x, x + rng.gen_range(0..m / 2), y, y + rng.gen_range(0..m / 2));
                check_instance_with(&idx, &rects, &q);
            }
        }
    }

    fn check_instance_with(idx: &RectIndex, rects: &[Rect2], q: &Rect2) {
        let want = oracle(rects, q);
        let (got, seeds) = idx.query_with_seeds(q);
        assert_eq!(got.as_slice(), want.as_slice());
        for p in &want {
            assert!(seeds.contains(p.i()) || seeds.contains(p.j()));
        }
        assert!(seeds.len() <= 2 * want.len() + 4);
    }
}
