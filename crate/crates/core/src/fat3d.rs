//! Pairwise intersections of cubes and fat boxes inside a query box.
//!
//! Every box is covered by cubes whose side is its shortest side. Each cube
//! gets witness points on its edges (the two covered points closest to the
//! edge's endpoints) and faces (covered points extreme along the two in-face
//! axes), counting only cubes from other source boxes. The query box is
//! covered the same way, and each query cube seeds from witnesses inside it and
//! cubes containing its corners.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::geom::{box_intersect, Axis, Box3, Coord, Interval, ObjectId, PairId, Point3};
use crate::ortho::{BoxIntersect3D, PointEnclosure3D, RangeReport3D};
use crate::sets::{ObjectSet, PairReport, SeedSet};
use crate::sweep::{adjacency, sweep_pairs};

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidAlpha(alpha))
    }
}

/// Upper bound on the number of cubes [`cover_box`] returns.
pub fn cover_bound(alpha: f64) -> usize {
    let c = alpha.ceil() as usize + 1;
    c * c
}

/// Cover `b` by cubes whose side is the shortest side of `b`, tiled from the
/// minimum corner; the last cube along each axis is flush with the maximum
/// corner, so cubes may overlap but never stick out.
pub fn cover_box(b: &Box3, alpha: f64) -> Result<Vec<Box3>> {
    check_alpha(alpha)?;
    let ratio = b.aspect_ratio();
    if ratio > alpha {
        return Err(Error::AspectRatio { ratio, alpha });
    }
    let side = Axis::ALL.iter().map(|&a| b.range(a).hi - b.range(a).lo).min().unwrap_or(0);
    let starts = |iv: Interval| -> Vec<Coord> {
        if side == 0 {
            return vec![iv.lo];
        }
        let count = (iv.hi - iv.lo + side - 1) / side;
        (0..count.max(1)).map(|k| (iv.lo + k * side).min(iv.hi - side)).collect()
    };
    let (xs, ys, zs) = (starts(b.xs), starts(b.ys), starts(b.zs));
    let mut out = Vec::with_capacity(xs.len() * ys.len() * zs.len());
    for &x in &xs {
        for &y in &ys {
            for &z in &zs {
                out.push(Box3::from_intervals(
                    Interval { lo: x, hi: x + side },
                    Interval { lo: y, hi: y + side },
                    Interval { lo: z, hi: z + side },
                ));
            }
        }
    }
    Ok(out)
}

/// Cubes covering a set of source boxes.
#[derive(Clone, Debug)]
pub struct CubeCover {
    cubes: Vec<Box3>,
    source: Vec<ObjectId>,
    ranges: Vec<std::ops::Range<usize>>,
}

impl CubeCover {
    pub fn build(boxes: &[Box3], alpha: f64) -> Result<Self> {
        let mut cubes = Vec::new();
        let mut source = Vec::new();
        let mut ranges = Vec::with_capacity(boxes.len());
        for (id, b) in boxes.iter().enumerate() {
            let start = cubes.len();
            for c in cover_box(b, alpha)? {
                cubes.push(c);
                source.push(id);
            }
            ranges.push(start..cubes.len());
        }
        Ok(CubeCover { cubes, source, ranges })
    }

    pub fn cubes(&self) -> &[Box3] {
        &self.cubes
    }

    pub fn source(&self, cube: usize) -> ObjectId {
        self.source[cube]
    }

    pub fn cubes_of(&self, id: ObjectId) -> &[Box3] {
        &self.cubes[self.ranges[id].clone()]
    }
}

/// The 12 edges of a box as (axis along the edge, fixed corner), where the
/// corner has the minimum coordinate along the edge.
fn edges(b: &Box3) -> impl Iterator<Item = (Axis, Point3)> + '_ {
    Axis::ALL.into_iter().flat_map(move |a| {
        let (u, v) = a.others();
        let (ru, rv) = (b.range(u), b.range(v));
        [(ru.lo, rv.lo), (ru.hi, rv.lo), (ru.lo, rv.hi), (ru.hi, rv.hi)]
            .into_iter()
            .map(move |(cu, cv)| (a, point_from(a, b.range(a).lo, (cu, cv))))
    })
}

/// Point with coordinate `t` on `axis` and `(u, v)` on `axis.others()`.
fn point_from(axis: Axis, t: Coord, (cu, cv): (Coord, Coord)) -> Point3 {
    let mut c = [0; 3];
    let (u, v) = axis.others();
    c[axis as usize] = t;
    c[u as usize] = cu;
    c[v as usize] = cv;
    Point3::new(c[0], c[1], c[2])
}

/// Witness points of one cube, given the cubes of other sources that touch it.
pub(crate) fn cube_witnesses(cube: &Box3, others: impl Iterator<Item = Box3> + Clone) -> Vec<Point3> {
    let mut out = Vec::new();
    for (a, p) in edges(cube) {
        let (u, v) = a.others();
        let (pu, pv) = (p.coord(u), p.coord(v));
        let span = cube.range(a);
        let mut lo: Option<Coord> = None;
        let mut hi: Option<Coord> = None;
        for o in others.clone() {
            if !(o.range(u).contains(pu) && o.range(v).contains(pv)) {
                continue;
            }
            if let Some(iv) = o.range(a).intersect(&span) {
                lo = Some(lo.map_or(iv.lo, |x| x.min(iv.lo)));
                hi = Some(hi.map_or(iv.hi, |x| x.max(iv.hi)));
            }
        }
        if let (Some(lo), Some(hi)) = (lo, hi) {
            out.push(point_from(a, lo, (pu, pv)));
            out.push(point_from(a, hi, (pu, pv)));
        }
    }
    for a in Axis::ALL {
        let (u, v) = a.others();
        for t in [cube.range(a).lo, cube.range(a).hi] {
            // Covered rectangles on the face, in (u, v) coordinates.
            let rects: Vec<(Interval, Interval)> = others
                .clone()
                .filter(|o| o.range(a).contains(t))
                .filter_map(|o| Some((o.range(u).intersect(&cube.range(u))?, o.range(v).intersect(&cube.range(v))?)))
                .collect();
            if rects.is_empty() {
                continue;
            }
            let lex = |key: fn(&(Interval, Interval)) -> (Coord, Coord)| rects.iter().map(key);
            let extremes = [
                lex(|r| (r.0.lo, r.1.lo)).min(),
                lex(|r| (r.0.hi, r.1.hi)).max(),
                lex(|r| (r.1.lo, r.0.lo)).min().map(|(y, x)| (x, y)),
                lex(|r| (r.1.hi, r.0.hi)).max().map(|(y, x)| (x, y)),
            ];
            out.extend(extremes.into_iter().flatten().map(|uv| point_from(a, t, uv)));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Clone, Debug)]
pub struct FatIndex {
    alpha: f64,
    boxes: ObjectSet<Box3>,
    cover: CubeCover,
    witnesses: Vec<(Point3, usize)>,
    d1: RangeReport3D,
    d2: PointEnclosure3D,
    dstar: BoxIntersect3D,
}

impl FatIndex {
    pub fn build(boxes: impl Into<ObjectSet<Box3>>, alpha: f64) -> Result<Self> {
        let boxes = boxes.into();
        let cover = CubeCover::build(boxes.as_slice(), alpha)?;
        let cubes = cover.cubes();
        let xs: Vec<_> = cubes.iter().map(|c| (c.xs.lo, c.xs.hi)).collect();
        let touching = sweep_pairs(&xs, |a, b| cover.source(a) != cover.source(b) && cubes[a].intersects(&cubes[b]));
        let neighbours = adjacency(cubes.len(), &touching);
        let mut witnesses = Vec::new();
        for (k, cube) in cubes.iter().enumerate() {
            let others = neighbours[k].iter().map(|&j| cubes[j]);
            witnesses.extend(cube_witnesses(cube, others).into_iter().map(|p| (p, k)));
        }
        Ok(FatIndex {
            alpha,
            d1: RangeReport3D::build(witnesses.iter().copied()),
            d2: PointEnclosure3D::build(cubes.iter().copied().zip(0..)),
            dstar: BoxIntersect3D::build(boxes.iter().copied().zip(0..)),
            boxes,
            cover,
            witnesses,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn boxes(&self) -> &ObjectSet<Box3> {
        &self.boxes
    }

    pub fn cover(&self) -> &CubeCover {
        &self.cover
    }

    /// Witness points with the index of the cube that owns them.
    pub fn witnesses(&self) -> &[(Point3, usize)] {
        &self.witnesses
    }

    pub fn seeds(&self, q: &Box3) -> Result<SeedSet> {
        let mut ids = Vec::new();
        for qc in cover_box(q, self.alpha)? {
            let _ = self.d1.visit(&qc, &mut |k| {
                ids.push(self.cover.source(k));
                ControlFlow::Continue(())
            });
            for v in qc.vertices() {
                let _ = self.d2.visit(v, &mut |k| {
                    ids.push(self.cover.source(k));
                    ControlFlow::Continue(())
                });
            }
        }
        Ok(SeedSet::from_ids(ids))
    }

    pub fn query(&self, q: &Box3) -> Result<PairReport> {
        Ok(self.query_with_seeds(q)?.0)
    }

    pub fn query_with_seeds(&self, q: &Box3) -> Result<(PairReport, SeedSet)> {
        let seeds = self.seeds(q)?;
        let mut pairs = Vec::new();
        for i in seeds.iter() {
            let Some(clipped) = box_intersect(&self.boxes[i], q) else { continue };
            let _ = self.dstar.visit(&clipped, &mut |j| {
                if self.boxes[j].intersects(&clipped) {
                    pairs.extend(PairId::new(i, j));
                }
                ControlFlow::Continue(())
            });
        }
        Ok((PairReport::from_pairs(pairs), seeds))
    }

    pub fn storage(&self) -> usize {
        self.boxes.len()
            + self.cover.cubes.len()
            + self.witnesses.len()
            + self.d1.storage()
            + self.d2.storage()
            + self.dstar.storage()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bx(x: (i64, i64), y: (i64, i64), z: (i64, i64)) -> Box3 {
        Box3::new(x, y, z).unwrap()
    }

    fn fat_box(rng: &mut ChaCha8Rng, m: i64, max_side: i64, alpha: f64) -> Box3 {
        let s = rng.gen_range(1..=max_side);
        let long = ((s as f64) * alpha).floor() as i64;
        let mut iv = || {
            let len = rng.gen_range(s..=long.max(s));
            let lo = rng.gen_range(0..m);
            (lo, lo + len)
        };
        let (a, b, c) = (iv(), iv(), iv());
        // Force one side to be exactly `s` so the ratio is at most alpha.
        let lo = a.0;
        bx((lo, lo + s), b, c)
    }

    fn oracle(boxes: &[Box3], q: &Box3) -> Vec<PairId> {
        let mut out = Vec::new();
        for i in 0..boxes.len() {
            for j in i + 1..boxes.len() {
                let meets = Axis::ALL.iter().all(|&a| {
                    let (x, y, z) = (boxes[i].range(a), boxes[j].range(a), q.range(a));
                    x.lo.max(y.lo).max(z.lo) <= x.hi.min(y.hi).min(z.hi)
                });
                if meets {
                    out.push(PairId::new(i, j).unwrap());
                }
            }
        }
        out
    }

    /// Witnesses recomputed by scanning every covered lattice point of every
    /// edge and face of every cube.
    fn witness_oracle(cover: &CubeCover) -> Vec<(Point3, usize)> {
        let cubes = cover.cubes();
        let covered = |k: usize, p: Point3| {
            cubes.iter().enumerate().any(|(j, c)| cover.source(j) != cover.source(k) && c.contains(p))
        };
        let mut out = Vec::new();
        for (k, c) in cubes.iter().enumerate() {
            let mut pts = Vec::new();
            for (a, p0) in edges(c) {
                let (u, v) = a.others();
                let hits: Vec<Point3> = (c.range(a).lo..=c.range(a).hi)
                    .map(|t| point_from(a, t, (p0.coord(u), p0.coord(v))))
                    .filter(|&p| covered(k, p))
                    .collect();
                pts.extend(hits.first());
                pts.extend(hits.last());
            }
            for a in Axis::ALL {
                let (u, v) = a.others();
                for t in [c.range(a).lo, c.range(a).hi] {
                    let mut hits = Vec::new();
                    for pu in c.range(u).lo..=c.range(u).hi {
                        for pv in c.range(v).lo..=c.range(v).hi {
                            let p = point_from(a, t, (pu, pv));
                            if covered(k, p) {
                                hits.push((pu, pv));
                            }
                        }
                    }
                    let swap = |&(x, y): &(Coord, Coord)| (y, x);
                    let ex = [
                        hits.iter().copied().min(),
                        hits.iter().copied().max(),
                        hits.iter().map(swap).min().map(|p| swap(&p)),
                        hits.iter().map(swap).max().map(|p| swap(&p)),
                    ];
                    pts.extend(ex.into_iter().flatten().map(|uv| point_from(a, t, uv)));
                }
            }
            pts.sort_unstable();
            pts.dedup();
            out.extend(pts.into_iter().map(|p| (p, k)));
        }
        out
    }

    #[test]
    fn cover_examples() {
        let cube = bx((0, 4), (0, 4), (0, 4));
        assert_eq!(cover_box(&cube, 1.0).unwrap(), vec![cube]);
        let tall = bx((0, 1), (0, 1), (0, 3));
        let cubes = cover_box(&tall, 3.0).unwrap();
        assert_eq!(cubes, vec![bx((0, 1), (0, 1), (0, 1)), bx((0, 1), (0, 1), (1, 2)), bx((0, 1), (0, 1), (2, 3))]);
        assert!(cover_box(&bx((0, 2), (0, 3), (0, 2)), 1.5).is_ok());
        assert!(matches!(cover_box(&bx((0, 2), (0, 4), (0, 2)), 1.5), Err(Error::AspectRatio { .. })));
        assert!(matches!(cover_box(&bx((0, 0), (0, 4), (0, 2)), 4.0), Err(Error::AspectRatio { .. })));
        assert!(matches!(cover_box(&cube, 0.5), Err(Error::InvalidAlpha(_))));
    }

    #[test]
    fn covers_tile_the_box() {
        let mut rng = ChaCha8Rng::seed_from_u64(81);
        for alpha in [1.0, 2.0, 2.5, 4.0] {
            for _ in 0..200 {
                let b = fat_box(&mut rng, 50, 6, alpha);
                let cubes = cover_box(&b, alpha).unwrap();
                assert!(cubes.len() <= cover_bound(alpha));
                assert!(cubes.iter().all(|c| c.is_cube() && box_intersect(c, &b) == Some(*c)));
                for x in b.xs.lo..=b.xs.hi {
                    for y in b.ys.lo..=b.ys.hi {
                        for z in b.zs.lo..=b.zs.hi {
                            assert!(cubes.iter().any(|c| c.contains(Point3::new(x, y, z))));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn disjoint_cubes_have_no_witnesses() {
        let idx = FatIndex::build(vec![bx((0, 1), (0, 1), (0, 1)), bx((5, 6), (5, 6), (5, 6))], 1.0).unwrap();
        assert!(idx.witnesses().is_empty());
    }

    #[test]
    fn face_witness_example() {
        let idx = FatIndex::build(vec![bx((0, 4), (0, 4), (0, 4)), bx((2, 6), (2, 6), (2, 6))], 1.0).unwrap();
        let top: Vec<Point3> = idx.witnesses().iter().filter(|(p, k)| *k == 0 && p.z == 4).map(|(p, _)| *p).collect();
        assert!(top.contains(&Point3::new(2, 2, 4)));
        assert_eq!(top.iter().map(|p| p.x).min(), Some(2));
    }

    #[test]
    fn same_source_cubes_have_no_witnesses() {
        let idx = FatIndex::build(vec![bx((0, 2), (0, 2), (0, 8))], 4.0).unwrap();
        assert_eq!(idx.cover().cubes().len(), 4);
        assert!(idx.witnesses().is_empty());
    }

    #[test]
    fn witnesses_match_lattice_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(82);
        for alpha in [1.0, 2.0] {
            let boxes: Vec<Box3> = (0..60).map(|_| fat_box(&mut rng, 25, 5, alpha)).collect();
            let idx = FatIndex::build(boxes, alpha).unwrap();
            let mut got = idx.witnesses().to_vec();
            got.sort_unstable_by_key(|&(p, k)| (k, p));
            let mut want = witness_oracle(idx.cover());
            want.sort_unstable_by_key(|&(p, k)| (k, p));
            assert_eq!(got, want);
            let mut per = vec![0; idx.cover().cubes().len()];
            got.iter().for_each(|&(_, k)| per[k] += 1);
            assert!(per.iter().all(|&c| c <= 48));
        }
    }

    #[test]
    fn small_cube_inside_query() {
        // c0 lies inside q and meets the larger c1 only through a side face.
        let boxes = vec![bx((4, 6), (4, 6), (4, 6)), bx((5, 15), (-2, 8), (-3, 7))];
        let idx = FatIndex::build(boxes.clone(), 1.0).unwrap();
        let q = bx((3, 7), (3, 7), (3, 7));
        let (got, seeds) = idx.query_with_seeds(&q).unwrap();
        assert!(seeds.contains(0) || seeds.contains(1));
        assert_eq!(got.as_slice(), oracle(&boxes, &q).as_slice());
    }

    #[test]
    fn cube_straddling_query_edge() {
        // c0 crosses the bottom front edge of q; c1 meets it inside q.
        let boxes = vec![bx((3, 5), (-1, 1), (-1, 1)), bx((4, 8), (-3, 1), (0, 4))];
        let idx = FatIndex::build(boxes.clone(), 1.0).unwrap();
        let q = bx((0, 10), (0, 10), (0, 10));
        let (got, seeds) = idx.query_with_seeds(&q).unwrap();
        assert!(seeds.contains(0) || seeds.contains(1));
        assert_eq!(got.as_slice(), oracle(&boxes, &q).as_slice());
    }

    #[test]
    fn query_rejects_thin_box() {
        let idx = FatIndex::build(vec![bx((0, 4), (0, 4), (0, 4))], 2.0).unwrap();
        assert!(matches!(idx.query(&bx((0, 1), (0, 9), (0, 1))), Err(Error::AspectRatio { .. })));
    }

    #[test]
    fn random_coverage_and_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        for alpha in [1.0, 2.0, 4.0] {
            for (n, m, side) in [(30, 20, 6), (200, 300, 40)] {
                let boxes: Vec<Box3> = (0..n).map(|_| fat_box(&mut rng, m, side, alpha)).collect();
                let idx = FatIndex::build(boxes.clone(), alpha).unwrap();
                for _ in 0..100 {
                    let q = fat_box(&mut rng, m, m / 2, alpha);
                    let want = oracle(&boxes, &q);
                    let (got, seeds) = idx.query_with_seeds(&q).unwrap();
                    for p in &want {
                        assert!(seeds.contains(p.i()) || seeds.contains(p.j()), "alpha {alpha}: {p:?} uncovered");
                    }
                    assert_eq!(got.as_slice(), want.as_slice());
                }
            }
        }
    }
}
