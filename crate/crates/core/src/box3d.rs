//! Pairwise box intersections inside a query box.
//!
//! A pair meeting inside `Q` either contains `Q`'s minimum corner, has a
//! vertex inside `Q` (a box vertex covered by the other box, or an edge of one
//! box crossing a face of the other), or meets a face of `Q`. The first kind is
//! read off a point-enclosure query, the second is seeded from witness
//! vertices and per-axis face clusters, and the third from per-axis slabs whose
//! long boxes are handled by a planar [`RectIndex`].

use std::ops::ControlFlow;

use crate::geom::{box_intersect, Axis, Box3, Coord, Interval, ObjectId, PairId, Point3};
use crate::ortho::{BoxIntersect3D, PointEnclosure3D, RangeReport2D, RangeReport3D};
use crate::rect2d::RectIndex;
use crate::sets::{ObjectSet, PairReport, SeedSet};

fn cluster_size(n: usize) -> usize {
    ((n as f64).sqrt().ceil() as usize).max(1)
}

#[derive(Clone, Debug)]
struct Cluster {
    /// Edge ids (`4 * box + k`) meeting a foreign face of the cluster.
    edges: Vec<u32>,
    projected: RangeReport2D,
}

/// Faces perpendicular to one axis, grouped by offset into clusters of about
/// `sqrt(n)` faces, each with the projections of the parallel edges that meet
/// one of its faces.
#[derive(Clone, Debug)]
pub struct ClusterFamily {
    axis: Axis,
    size: usize,
    offsets: Vec<Coord>,
    owners: Vec<ObjectId>,
    clusters: Vec<Cluster>,
}

impl ClusterFamily {
    fn build(boxes: &[Box3], axis: Axis) -> Self {
        let mut faces: Vec<(Coord, ObjectId)> = boxes
            .iter()
            .enumerate()
            .flat_map(|(id, b)| {
                let r = b.range(axis);
                [(r.lo, id), (r.hi, id)]
            })
            .collect();
        faces.sort_unstable();
        let (offsets, owners): (Vec<Coord>, Vec<ObjectId>) = faces.into_iter().unzip();
        let size = cluster_size(boxes.len());

        let edge_points = RangeReport2D::from_points(boxes.iter().enumerate().flat_map(|(id, b)| {
            b.project(axis).corners().into_iter().zip(0..).map(move |(p, k)| (p, 4 * id + k))
        }));
        let mut mark = vec![false; 4 * boxes.len()];
        let clusters = (0..offsets.len().div_ceil(size))
            .map(|t| {
                let mut edges = Vec::new();
                for f in t * size..((t + 1) * size).min(offsets.len()) {
                    let (z, owner) = (offsets[f], owners[f]);
                    let _ = edge_points.visit_rect(&boxes[owner].project(axis), &mut |e| {
                        let b = e / 4;
                        if b != owner && !mark[e] && boxes[b].range(axis).contains(z) {
                            mark[e] = true;
                            edges.push(e as u32);
                        }
                        ControlFlow::Continue(())
                    });
                }
                edges.sort_unstable();
                for &e in &edges {
                    mark[e as usize] = false;
                }
                let projected = RangeReport2D::from_points(edges.iter().map(|&e| {
                    let b = e as usize / 4;
                    (boxes[b].project(axis).corners()[e as usize % 4], b)
                }));
                Cluster { edges, projected }
            })
            .collect();
        ClusterFamily {
            axis,
            size,
            offsets,
            owners,
            clusters,
        }
    }

    fn seeds(&self, q: &Box3, out: &mut Vec<ObjectId>) {
        let r = q.range(self.axis);
        let first = self.offsets.partition_point(|&z| z < r.lo);
        let last = self.offsets.partition_point(|&z| z <= r.hi);
        if first >= last {
            return;
        }
        let (ci, cj) = (first / self.size, (last - 1) / self.size);
        for c in [ci, cj] {
            let end = ((c + 1) * self.size).min(self.owners.len());
            out.extend_from_slice(&self.owners[c * self.size..end]);
        }
        let proj = q.project(self.axis);
        for cluster in self.clusters.iter().take(cj).skip(ci + 1) {
            let _ = cluster.projected.visit_rect(&proj, &mut |b| {
                out.push(b);
                ControlFlow::Continue(())
            });
        }
    }

    pub fn cluster_count(&self) -> usize {
        self.clusters.len()
    }

    /// Sorted edge ids (`4 * box + corner`) stored with cluster `t`.
    pub fn cluster_edges(&self, t: usize) -> &[u32] {
        &self.clusters[t].edges
    }

    /// Owners of the faces in cluster `t`, with their offsets.
    pub fn cluster_faces(&self, t: usize) -> impl Iterator<Item = (Coord, ObjectId)> + '_ {
        let end = ((t + 1) * self.size).min(self.owners.len());
        (t * self.size..end).map(|f| (self.offsets[f], self.owners[f]))
    }

    fn storage(&self) -> usize {
        self.offsets.len() + self.clusters.iter().map(|c| c.edges.len() + c.projected.storage()).sum::<usize>()
    }
}

#[derive(Clone, Debug)]
struct Slab {
    range: Interval,
    short: Vec<ObjectId>,
    long: Vec<ObjectId>,
    index: RectIndex,
}

/// Slabs perpendicular to one axis, cut at every `sqrt(n)`-th face offset.
#[derive(Clone, Debug)]
pub struct SlabFamily {
    axis: Axis,
    planes: Vec<Coord>,
    slabs: Vec<Slab>,
}

impl SlabFamily {
    fn build(boxes: &[Box3], axis: Axis) -> Self {
        let mut offsets: Vec<Coord> = boxes
            .iter()
            .flat_map(|b| {
                let r = b.range(axis);
                [r.lo, r.hi]
            })
            .collect();
        offsets.sort_unstable();
        let size = cluster_size(boxes.len());
        let mut planes: Vec<Coord> = (1..).map(|t| t * size - 1).take_while(|&k| k < offsets.len()).map(|k| offsets[k]).collect();
        planes.dedup();

        let slabs = (0..=planes.len())
            .map(|k| {
                let lo = if k == 0 { Coord::MIN } else { planes[k - 1] };
                let hi = planes.get(k).copied().unwrap_or(Coord::MAX);
                let range = Interval { lo, hi };
                let mut short = Vec::new();
                let mut long = Vec::new();
                for (id, b) in boxes.iter().enumerate() {
                    let r = b.range(axis);
                    if range.contains(r.lo) || range.contains(r.hi) {
                        short.push(id);
                    } else if r.lo < lo && r.hi > hi {
                        long.push(id);
                    }
                }
                let index = RectIndex::build(long.iter().map(|&id| boxes[id].project(axis)).collect::<Vec<_>>());
                Slab { range, short, long, index }
            })
            .collect();
        SlabFamily { axis, planes, slabs }
    }

    fn slab(&self, z: Coord) -> &Slab {
        &self.slabs[self.planes.partition_point(|&p| p < z)]
    }

    fn seeds_and_direct(&self, q: &Box3, seeds: &mut Vec<ObjectId>, direct: &mut Vec<PairId>) {
        let r = q.range(self.axis);
        let proj = q.project(self.axis);
        for z in [r.lo, r.hi] {
            let slab = self.slab(z);
            debug_assert!(slab.range.contains(z));
            seeds.extend_from_slice(&slab.short);
            direct.extend(slab.index.query(&proj).iter().filter_map(|p| PairId::new(slab.long[p.i()], slab.long[p.j()])));
        }
    }

    pub fn slab_count(&self) -> usize {
        self.slabs.len()
    }

    fn storage(&self) -> usize {
        self.planes.len()
            + self
                .slabs
                .iter()
                .map(|s| s.short.len() + s.long.len() + s.index.storage())
                .sum::<usize>()
    }
}

#[derive(Clone, Debug)]
pub struct BoxIndex {
    boxes: ObjectSet<Box3>,
    enclosure: PointEnclosure3D,
    witnesses: Vec<(Point3, ObjectId)>,
    wverts: RangeReport3D,
    clusters: [ClusterFamily; 3],
    slabs: [SlabFamily; 3],
    dstar: BoxIntersect3D,
}

impl BoxIndex {
    pub fn build(boxes: impl Into<ObjectSet<Box3>>) -> Self {
        let boxes = boxes.into();
        let enclosure = PointEnclosure3D::build(boxes.iter().copied().zip(0..));
        let mut witnesses = Vec::new();
        for (id, b) in boxes.iter().enumerate() {
            for v in b.vertices() {
                let covered = enclosure.visit(v, &mut |j| if j != id { ControlFlow::Break(()) } else { ControlFlow::Continue(()) });
                if covered.is_break() {
                    witnesses.push((v, id));
                }
            }
        }
        witnesses.sort_unstable();
        witnesses.dedup();
        let wverts = RangeReport3D::build(witnesses.iter().copied());
        let all = boxes.as_slice();
        BoxIndex {
            clusters: Axis::ALL.map(|a| ClusterFamily::build(all, a)),
            slabs: Axis::ALL.map(|a| SlabFamily::build(all, a)),
            dstar: BoxIntersect3D::build(boxes.iter().copied().zip(0..)),
            boxes,
            enclosure,
            witnesses,
            wverts,
        }
    }

    pub fn boxes(&self) -> &ObjectSet<Box3> {
        &self.boxes
    }

    /// Box vertices covered by another box, with their owners.
    pub fn witness_vertices(&self) -> &[(Point3, ObjectId)] {
        &self.witnesses
    }

    pub fn cluster_family(&self, axis: Axis) -> &ClusterFamily {
        &self.clusters[axis as usize]
    }

    pub fn slab_family(&self, axis: Axis) -> &SlabFamily {
        &self.slabs[axis as usize]
    }

    /// Seed boxes plus the pairs of long boxes reported directly by the slabs.
    pub fn seeds_and_direct(&self, q: &Box3) -> (SeedSet, PairReport) {
        let mut seeds = self.enclosure.query(q.min_corner());
        seeds.extend(self.wverts.query(q));
        let mut direct = Vec::new();
        for axis in Axis::ALL {
            self.clusters[axis as usize].seeds(q, &mut seeds);
            self.slabs[axis as usize].seeds_and_direct(q, &mut seeds, &mut direct);
        }
        (SeedSet::from_ids(seeds), PairReport::from_pairs(direct))
    }

    pub fn query(&self, q: &Box3) -> PairReport {
        self.query_with_seeds(q).0
    }

    pub fn query_with_seeds(&self, q: &Box3) -> (PairReport, SeedSet) {
        let mut pairs = Vec::new();
        let corner = self.enclosure.query(q.min_corner());
        for (a, &i) in corner.iter().enumerate() {
            pairs.extend(corner[a + 1..].iter().filter_map(|&j| PairId::new(i, j)));
        }
        let (seeds, direct) = self.seeds_and_direct(q);
        pairs.extend(direct.iter());
        for i in seeds.iter() {
            let Some(clipped) = box_intersect(&self.boxes[i], q) else { continue };
            let _ = self.dstar.visit(&clipped, &mut |j| {
                pairs.extend(PairId::new(i, j));
                ControlFlow::Continue(())
            });
        }
        pairs.retain(|p| {
            box_intersect(&self.boxes[p.i()], &self.boxes[p.j()]).is_some_and(|b| box_intersect(&b, q).is_some())
        });
        (PairReport::from_pairs(pairs), seeds)
    }

    pub fn storage(&self) -> usize {
        self.boxes.len()
            + self.enclosure.storage()
            + self.wverts.storage()
            + self.clusters.iter().map(ClusterFamily::storage).sum::<usize>()
            + self.slabs.iter().map(SlabFamily::storage).sum::<usize>()
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

    fn random_boxes(rng: &mut ChaCha8Rng, n: usize, m: i64, len: i64) -> Vec<Box3> {
        let mut iv = || {
            let lo = rng.gen_range(0..m);
            (lo, lo + rng.gen_range(0..len))
        };
        (0..n).map(|_| bx(iv(), iv(), iv())).collect()
    }

    fn random_query(rng: &mut ChaCha8Rng, m: i64) -> Box3 {
        let mut iv = || {
            let lo = rng.gen_range(-5..m);
            (lo, lo + rng.gen_range(0..m / 2))
        };
        bx(iv(), iv(), iv())
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

    #[test]
    fn disjoint_boxes_have_no_witnesses() {
        let idx = BoxIndex::build(vec![bx((0, 1), (0, 1), (0, 1)), bx((5, 6), (5, 6), (5, 6))]);
        assert!(idx.witness_vertices().is_empty());
        for a in Axis::ALL {
            let fam = idx.cluster_family(a);
            assert!((0..fam.cluster_count()).all(|t| fam.cluster_edges(t).is_empty()));
        }
    }

    #[test]
    fn overlapping_cubes_witness_vertices() {
        let idx = BoxIndex::build(vec![bx((0, 2), (0, 2), (0, 2)), bx((1, 3), (1, 3), (1, 3))]);
        assert_eq!(idx.witness_vertices(), &[(Point3::new(1, 1, 1), 1), (Point3::new(2, 2, 2), 0)]);
    }

    #[test]
    fn witness_vertices_match_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let boxes = random_boxes(&mut rng, 200, 100, 30);
        let idx = BoxIndex::build(boxes.clone());
        let mut want = Vec::new();
        for (i, b) in boxes.iter().enumerate() {
            for v in b.vertices() {
                if boxes.iter().enumerate().any(|(j, o)| j != i && o.contains(v)) {
                    want.push((v, i));
                }
            }
        }
        want.sort_unstable();
        want.dedup();
        assert_eq!(idx.witness_vertices(), want.as_slice());
    }

    #[test]
    fn cluster_membership_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(72);
        let boxes = random_boxes(&mut rng, 40, 30, 15);
        let idx = BoxIndex::build(boxes.clone());
        for axis in Axis::ALL {
            let fam = idx.cluster_family(axis);
            for t in 0..fam.cluster_count() {
                let faces: Vec<_> = fam.cluster_faces(t).collect();
                let want: Vec<u32> = (0..4 * boxes.len() as u32)
                    .filter(|&e| {
                        let b = &boxes[e as usize / 4];
                        let p = b.project(axis).corners()[e as usize % 4];
                        faces.iter().any(|&(z, o)| {
                            o != e as usize / 4 && b.range(axis).contains(z) && boxes[o].project(axis).contains(p)
                        })
                    })
                    .collect();
                assert_eq!(fam.cluster_edges(t), want.as_slice(), "axis {axis:?} cluster {t}");
            }
        }
    }

    #[test]
    fn corner_pair_reported() {
        let idx = BoxIndex::build(vec![bx((0, 10), (0, 10), (0, 10)), bx((-5, 5), (-5, 5), (-5, 5))]);
        let q = bx((1, 2), (1, 2), (1, 2));
        assert_eq!(idx.query(&q).to_arrays(), vec![[0, 1]]);
    }

    #[test]
    fn inner_intersection_reported() {
        let idx = BoxIndex::build(vec![bx((0, 4), (0, 4), (0, 4)), bx((3, 6), (3, 6), (3, 6))]);
        let q = bx((-10, 10), (-10, 10), (-10, 10));
        let (seeds, _) = idx.seeds_and_direct(&q);
        assert!(seeds.contains(0) && seeds.contains(1));
        assert_eq!(idx.query(&q).to_arrays(), vec![[0, 1]]);
    }

    #[test]
    fn long_boxes_reported_directly() {
        // Many thin boxes create slabs along z; two tall boxes cross the slab
        // holding the bottom face of q.
        let mut boxes: Vec<Box3> = (0..30).map(|k| bx((100, 101), (100, 101), (10 * k, 10 * k + 1))).collect();
        boxes.push(bx((0, 10), (0, 10), (-1000, 1000)));
        boxes.push(bx((5, 15), (5, 15), (-1000, 1000)));
        let idx = BoxIndex::build(boxes.clone());
        let q = bx((0, 20), (0, 20), (145, 147));
        let (_, direct) = idx.seeds_and_direct(&q);
        assert!(direct.contains(PairId::new(30, 31).unwrap()));
        assert_eq!(idx.query(&q).as_slice(), oracle(&boxes, &q).as_slice());
    }

    #[test]
    fn random_coverage_and_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for (n, m, len) in [(0, 10, 5), (1, 10, 5), (60, 50, 20), (300, 1000, 200)] {
            let boxes = random_boxes(&mut rng, n, m, len);
            let idx = BoxIndex::build(boxes.clone());
            for _ in 0..100 {
                let q = random_query(&mut rng, m);
                let want = oracle(&boxes, &q);
                let (seeds, direct) = idx.seeds_and_direct(&q);
                for p in &want {
                    assert!(seeds.contains(p.i()) || seeds.contains(p.j()) || direct.contains(*p), "{p:?} uncovered");
                }
                assert_eq!(idx.query(&q).as_slice(), want.as_slice());
            }
        }
    }
}
