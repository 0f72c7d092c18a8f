//! Pairwise disk intersections inside a query rectangle.
//!
//! For a disk `o_i` let `o_i*` be the part of `o_i` covered by at least one
//! other disk. Two disks meet inside `Q` exactly when both of their star
//! regions meet `Q`, so the seeds are the disks whose star region meets `Q`.
//! A star region meets `Q` iff one of its connected components has its
//! representative point in `Q`, or its boundary crosses an edge of `Q`. The
//! first case is a 2D range query over representative points. The second is
//! answered by a balanced tree over the disks sorted by center x: each node
//! stores the union of its disks' star regions with slab point locators
//! (one for vertical query edges, one transposed for horizontal ones), and a
//! query edge descends only into subtrees whose union it meets.
//!
//! Input must be in general position: no tangent or concentric pairs and no
//! three circles through a common point (within tolerance).

mod arrangement;
mod locate;

use std::f64::consts::FRAC_PI_2;

use ordered_float::OrderedFloat;

use crate::error::Result;
use crate::geom::{disk_eps, lens_rect_intersects_eps, Disk, ObjectId, PairId, RealRect};
use crate::ortho::RangeReport2D;
use crate::sets::{ObjectSet, PairReport, SeedSet};
use crate::sweep::sweep_pairs;

use arrangement::{lens_point, Arc, Arrangement, Boundary};
pub use arrangement::Vertex;
use locate::SlabLocator;

/// Summary of one star region `o_i*`.
#[derive(Clone, Debug, Default)]
pub struct StarRegion {
    /// One interior point per connected component.
    pub representatives: Vec<(f64, f64)>,
    pub vertices: Vec<Vertex>,
    pub edges: usize,
}

impl StarRegion {
    /// Number of vertices plus edges.
    pub fn complexity(&self) -> usize {
        self.vertices.len() + self.edges
    }
}

#[derive(Clone, Debug)]
struct Node {
    /// First rank of the node's disks in x-sorted order.
    lo: usize,
    children: Option<(usize, usize)>,
    xloc: SlabLocator,
    /// Locator in transposed coordinates `(y, x)`.
    yloc: SlabLocator,
}

#[derive(Clone, Debug)]
pub struct UnionIndex {
    disks: ObjectSet<Disk>,
    eps: f64,
    stars: Vec<StarRegion>,
    reps: RangeReport2D<OrderedFloat<f64>>,
    /// Disk ids sorted by center x.
    sorted: Vec<u32>,
    nodes: Vec<Node>,
    root: Option<usize>,
    leaf_of: Vec<usize>,
}

fn transpose(a: &Arc) -> Arc {
    let disk = Disk {
        cx: a.disk.cy,
        cy: a.disk.cx,
        r: a.disk.r,
    };
    let (mut t0, mut t1) = (FRAC_PI_2 - a.t1, FRAC_PI_2 - a.t0);
    let shift = (t0 / std::f64::consts::TAU).floor() * std::f64::consts::TAU;
    t0 -= shift;
    t1 -= shift;
    Arc {
        disk,
        t0,
        t1,
        inner: a.inner,
    }
}

fn locators(b: &Boundary) -> (SlabLocator, SlabLocator) {
    let transposed: Vec<Arc> = b.arcs.iter().map(transpose).collect();
    (SlabLocator::build(&b.arcs), SlabLocator::build(&transposed))
}

impl UnionIndex {
    /// Builds the index with the tolerance from [`disk_eps`].
    pub fn build(disks: impl Into<ObjectSet<Disk>>) -> Result<Self> {
        Self::build_with_eps(disks, disk_eps())
    }

    pub fn build_with_eps(disks: impl Into<ObjectSet<Disk>>, eps: f64) -> Result<Self> {
        let disks = disks.into();
        let n = disks.len();
        let arr = Arrangement::build(disks.as_slice(), eps)?;

        let mut stars = Vec::with_capacity(n);
        let mut rep_points = Vec::new();
        for i in 0..n {
            let star = Self::star(&arr, disks.as_slice(), i, eps);
            for &(x, y) in &star.representatives {
                rep_points.push(((OrderedFloat(x), OrderedFloat(y)), i));
            }
            stars.push(star);
        }
        let reps = RangeReport2D::build(rep_points);

        let mut sorted: Vec<u32> = (0..n as u32).collect();
        sorted.sort_unstable_by(|&a, &b| disks[a as usize].cx.total_cmp(&disks[b as usize].cx).then(a.cmp(&b)));
        let mut rank = vec![0usize; n];
        for (k, &d) in sorted.iter().enumerate() {
            rank[d as usize] = k;
        }
        let mut index = UnionIndex {
            disks,
            eps,
            stars,
            reps,
            sorted,
            nodes: Vec::new(),
            root: None,
            leaf_of: vec![0; n],
        };
        if n > 0 {
            index.root = Some(index.build_node(&arr, &rank, 0, n));
        }
        for (k, node) in index.nodes.iter().enumerate() {
            if node.children.is_none() {
                index.leaf_of[index.sorted[node.lo] as usize] = k;
            }
        }
        Ok(index)
    }

    fn star(arr: &Arrangement, disks: &[Disk], i: usize, eps: f64) -> StarRegion {
        let nb = arr.neighbours(i);
        let mut candidates: Vec<u32> = nb.to_vec();
        candidates.push(i as u32);
        candidates.sort_unstable();
        let b = arr.boundary(&candidates, |d| d == i as u32);

        // Lenses o_i ∩ o_j are joined when a third disk meets both inside o_i.
        let mut parent: Vec<usize> = (0..nb.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in 0..nb.len() {
            for c in a + 1..nb.len() {
                let (j, k) = (nb[a] as usize, nb[c] as usize);
                if arr.neighbours(j).binary_search(&(k as u32)).is_ok() && arr.triple_meets(i, j, k, eps) {
                    let (ra, rc) = (find(&mut parent, a), find(&mut parent, c));
                    parent[ra.max(rc)] = ra.min(rc);
                }
            }
        }
        let representatives = (0..nb.len())
            .filter(|&a| find(&mut parent, a) == a)
            .map(|a| lens_point(&disks[i], &disks[nb[a] as usize]))
            .collect();
        StarRegion {
            representatives,
            vertices: b.vertices,
            edges: b.edges,
        }
    }

    fn build_node(&mut self, arr: &Arrangement, rank: &[usize], lo: usize, hi: usize) -> usize {
        let children = (hi - lo > 1).then(|| {
            let mid = (lo + hi) / 2;
            (self.build_node(arr, rank, lo, mid), self.build_node(arr, rank, mid, hi))
        });
        let mut candidates: Vec<u32> = Vec::new();
        for &d in &self.sorted[lo..hi] {
            candidates.push(d);
            candidates.extend_from_slice(arr.neighbours(d as usize));
        }
        candidates.sort_unstable();
        candidates.dedup();
        let b = arr.boundary(&candidates, |d| (lo..hi).contains(&rank[d as usize]));
        let (xloc, yloc) = locators(&b);
        self.nodes.push(Node {
            lo,
            children,
            xloc,
            yloc,
        });
        self.nodes.len() - 1
    }

    pub fn disks(&self) -> &ObjectSet<Disk> {
        &self.disks
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn star_region(&self, i: ObjectId) -> &StarRegion {
        &self.stars[i]
    }

    /// Total complexity `Σ |o_i*|` of all star regions.
    pub fn star_complexity(&self) -> usize {
        self.stars.iter().map(StarRegion::complexity).sum()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Whether a point lies in the star region of disk `i`, via its leaf
    /// locator. Exposed for consistency checks.
    pub fn star_contains(&self, i: ObjectId, x: f64, y: f64) -> bool {
        self.nodes[self.leaf_of[i]].xloc.locate(x, y).1
    }

    /// Whether a point lies in the union of the star regions below the root,
    /// using the transposed locator.
    pub fn union_contains(&self, x: f64, y: f64) -> bool {
        self.root.is_some_and(|k| self.nodes[k].yloc.locate(y, x).1)
    }

    fn walk(&self, k: usize, seg: (f64, f64, f64), vertical: bool, out: &mut Vec<ObjectId>) {
        let node = &self.nodes[k];
        let (fixed, a, b) = seg;
        let meets = if vertical {
            node.xloc.segment_meets((fixed, a), (fixed, b))
        } else {
            node.yloc.segment_meets((fixed, a), (fixed, b))
        };
        if !meets {
            return;
        }
        match node.children {
            None => out.push(self.sorted[node.lo] as usize),
            Some((l, r)) => {
                self.walk(l, seg, vertical, out);
                self.walk(r, seg, vertical, out);
            }
        }
    }

    pub fn seeds(&self, q: &RealRect) -> SeedSet {
        let mut ids = self
            .reps
            .query((OrderedFloat(q.x0), OrderedFloat(q.x1)), (OrderedFloat(q.y0), OrderedFloat(q.y1)));
        if let Some(root) = self.root {
            self.walk(root, (q.x0, q.y0, q.y1), true, &mut ids);
            self.walk(root, (q.x1, q.y0, q.y1), true, &mut ids);
            self.walk(root, (q.y0, q.x0, q.x1), false, &mut ids);
            self.walk(root, (q.y1, q.x0, q.x1), false, &mut ids);
        }
        SeedSet::from_ids(ids)
    }

    pub fn query(&self, q: &RealRect) -> PairReport {
        self.query_with_seeds(q).0
    }

    pub fn query_with_seeds(&self, q: &RealRect) -> (PairReport, SeedSet) {
        let seeds = self.seeds(q);
        let ids: Vec<ObjectId> = seeds.iter().collect();
        let spans: Vec<(f64, f64)> = ids
            .iter()
            .map(|&i| {
                let d = &self.disks[i];
                ((d.cx - d.r).max(q.x0), (d.cx + d.r).min(q.x1))
            })
            .collect();
        let tol = self.eps * q.scale();
        let padded: Vec<(f64, f64)> = spans.iter().map(|&(lo, hi)| (lo - tol, hi + tol)).collect();
        let pairs = sweep_pairs(&padded, |a, b| {
            lens_rect_intersects_eps(&self.disks[ids[a]], &self.disks[ids[b]], q, self.eps)
        });
        let pairs = pairs.into_iter().filter_map(|(a, b)| PairId::new(ids[a], ids[b])).collect();
        (PairReport::from_pairs(pairs), seeds)
    }

    pub fn storage(&self) -> usize {
        self.disks.len()
            + self.reps.storage()
            + self.nodes.iter().map(|n| 1 + n.xloc.storage() + n.yloc.storage()).sum::<usize>()
    }
}
