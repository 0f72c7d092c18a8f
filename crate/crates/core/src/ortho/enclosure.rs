//! Point enclosure: which rectangles or boxes contain a query point.

use std::ops::ControlFlow;

use super::tree::{IntervalTree, SegmentTree};
use crate::geom::{Box3, Point2, Point3, Rect2};

/// Segment tree on x-intervals whose nodes hold interval trees on y.
#[derive(Clone, Debug)]
pub struct PointEnclosure2D {
    payload: Vec<usize>,
    tree: SegmentTree<IntervalTree>,
}

impl PointEnclosure2D {
    pub fn build(rects: impl IntoIterator<Item = (Rect2, usize)>) -> Self {
        let (rects, payload): (Vec<Rect2>, Vec<usize>) = rects.into_iter().unzip();
        let xs: Vec<_> = rects.iter().enumerate().map(|(k, r)| (r.xs, k as u32)).collect();
        let tree = SegmentTree::build(&xs, |ids| {
            IntervalTree::build(ids.iter().map(|&k| (rects[k as usize].ys, k)).collect())
        });
        PointEnclosure2D { payload, tree }
    }

    pub fn len(&self) -> usize {
        self.payload.len()
    }

    pub fn is_empty(&self) -> bool {
        self.payload.is_empty()
    }

    pub fn visit(&self, p: Point2, f: &mut impl FnMut(usize) -> ControlFlow<()>) -> ControlFlow<()> {
        self.tree
            .stab(p.x, &mut |it: &IntervalTree| it.stab(p.y, &mut |k| f(self.payload[k as usize])))
    }

    pub fn query(&self, p: Point2) -> Vec<usize> {
        let mut out = Vec::new();
        let _ = self.visit(p, &mut |id| {
            out.push(id);
            ControlFlow::Continue(())
        });
        out
    }

    pub fn storage(&self) -> usize {
        self.payload.len() + self.tree.stored()
    }
}

/// Segment tree on x-intervals whose nodes hold [`PointEnclosure2D`] on (y, z).
#[derive(Clone, Debug)]
pub struct PointEnclosure3D {
    payload: Vec<usize>,
    tree: SegmentTree<PointEnclosure2D>,
}

impl PointEnclosure3D {
    pub fn build(boxes: impl IntoIterator<Item = (Box3, usize)>) -> Self {
        let (boxes, payload): (Vec<Box3>, Vec<usize>) = boxes.into_iter().unzip();
        let xs: Vec<_> = boxes.iter().enumerate().map(|(k, b)| (b.xs, k as u32)).collect();
        let tree = SegmentTree::build(&xs, |ids| {
            PointEnclosure2D::build(ids.iter().map(|&k| {
                let b = &boxes[k as usize];
                (Rect2 { xs: b.ys, ys: b.zs }, k as usize)
            }))
        });
        PointEnclosure3D { payload, tree }
    }

    pub fn len(&self) -> usize {
        self.payload.len()
    }

    pub fn is_empty(&self) -> bool {
        self.payload.is_empty()
    }

    pub fn visit(&self, p: Point3, f: &mut impl FnMut(usize) -> ControlFlow<()>) -> ControlFlow<()> {
        let inner = Point2::new(p.y, p.z);
        self.tree
            .stab(p.x, &mut |pe: &PointEnclosure2D| pe.visit(inner, &mut |k| f(self.payload[k])))
    }

    pub fn query(&self, p: Point3) -> Vec<usize> {
        let mut out = Vec::new();
        let _ = self.visit(p, &mut |id| {
            out.push(id);
            ControlFlow::Continue(())
        });
        out
    }

    pub fn storage(&self) -> usize {
        self.payload.len() + self.tree.assocs().iter().map(PointEnclosure2D::storage).sum::<usize>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Interval;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn iv(rng: &mut ChaCha8Rng, m: i64) -> Interval {
        let lo = rng.gen_range(0..m);
        Interval { lo, hi: lo + rng.gen_range(0..m / 3) }
    }

    #[test]
    fn enclosure_2d_matches_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let rects: Vec<Rect2> = (0..100).map(|_| Rect2 { xs: iv(&mut rng, 100), ys: iv(&mut rng, 100) }).collect();
        let pe = PointEnclosure2D::build(rects.iter().copied().zip(0..));
        for _ in 0..500 {
            let p = Point2::new(rng.gen_range(-5..140), rng.gen_range(-5..140));
            let mut got = pe.query(p);
            got.sort_unstable();
            let want: Vec<usize> = (0..rects.len()).filter(|&k| rects[k].contains(p)).collect();
            assert_eq!(got, want);
        }
        assert!(PointEnclosure2D::build(std::iter::empty()).query(Point2::new(0, 0)).is_empty());
    }

    #[test]
    fn enclosure_3d_matches_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let boxes: Vec<Box3> = (0..400)
            .map(|_| Box3 { xs: iv(&mut rng, 60), ys: iv(&mut rng, 60), zs: iv(&mut rng, 60) })
            .collect();
        let pe = PointEnclosure3D::build(boxes.iter().copied().zip(0..));
        for _ in 0..500 {
            let p = Point3::new(rng.gen_range(-5..80), rng.gen_range(-5..80), rng.gen_range(-5..80));
            let mut got = pe.query(p);
            got.sort_unstable();
            let want: Vec<usize> = (0..boxes.len()).filter(|&k| boxes[k].contains(p)).collect();
            assert_eq!(got, want);
        }
    }
}
