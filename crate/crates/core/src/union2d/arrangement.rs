//! Arrangement of the disk boundaries, cut into elementary arcs.
//!
//! Every circle is split at its crossings with other circles. Each resulting
//! piece knows which other disks contain it, which is enough to decide, for
//! any region defined by disk-membership counts, whether the piece lies on the
//! region's boundary and on which side the region is.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::geom::{circle_pair, CirclePair, Disk};
use crate::sweep::{adjacency, sweep_pairs};

/// A piece of one circle between two consecutive crossings.
#[derive(Clone, Debug)]
pub(crate) struct Piece {
    pub t0: f64,
    pub t1: f64,
    /// Other disks strictly containing the piece, sorted.
    pub inside: Vec<u32>,
    /// Circle crossed at `t1`; `None` for a full circle.
    pub end: Option<u32>,
}

/// A boundary arc of some region, `t0 < t1`, angles in radians.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Arc {
    pub disk: Disk,
    pub t0: f64,
    pub t1: f64,
    /// The region lies inside the circle along this arc.
    pub inner: bool,
}

/// A vertex of a region's boundary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vertex {
    pub x: f64,
    pub y: f64,
    pub circles: (usize, usize),
    /// Number of other disks containing the vertex.
    pub level: usize,
}

/// Boundary of a region: its arcs, vertices and edge count.
#[derive(Clone, Debug, Default)]
pub(crate) struct Boundary {
    pub arcs: Vec<Arc>,
    pub vertices: Vec<Vertex>,
    pub edges: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct Arrangement {
    disks: Vec<Disk>,
    /// Disks sharing interior points with each disk.
    neighbours: Vec<Vec<u32>>,
    pieces: Vec<Piece>,
    /// Range of `pieces` belonging to each circle, in angular order.
    starts: Vec<usize>,
}

pub(crate) fn angle_of(d: &Disk, x: f64, y: f64) -> f64 {
    let t = (y - d.cy).atan2(x - d.cx);
    if t < 0.0 { t + TAU } else { t }
}

pub(crate) fn point_at(d: &Disk, t: f64) -> (f64, f64) {
    (d.cx + d.r * t.cos(), d.cy + d.r * t.sin())
}

/// Whether the region defined by membership set `set` (plus `extra`) holds.
///
/// The regions used here are "covered by at least two disks, one of them
/// from the group `in_group`".
fn member(set: &[u32], extra: &[u32], in_group: &impl Fn(u32) -> bool) -> bool {
    set.len() + extra.len() >= 2 && set.iter().chain(extra).any(|&d| in_group(d))
}

impl Arrangement {
    pub fn build(disks: &[Disk], eps: f64) -> Result<Self> {
        let n = disks.len();
        let tol = |a: usize, b: usize| eps * disks[a].scale().max(disks[b].scale());
        let spans: Vec<(f64, f64)> = disks.iter().map(|d| (d.cx - d.r, d.cx + d.r)).collect();
        let mut bad = None;
        let pairs = sweep_pairs(&spans, |a, b| {
            let (p, q) = (&disks[a], &disks[b]);
            let d = (q.cx - p.cx).hypot(q.cy - p.cy);
            let t = tol(a, b);
            if d <= t || (d - (p.r + q.r)).abs() <= t || (d - (p.r - q.r).abs()).abs() <= t {
                bad.get_or_insert((a, b));
            }
            d < p.r + q.r
        });
        if let Some((a, b)) = bad {
            return Err(Error::Degenerate(a, b));
        }
        let neighbours: Vec<Vec<u32>> = adjacency(n, &pairs)
            .into_iter()
            .map(|v| {
                let mut v: Vec<u32> = v.into_iter().map(|k| k as u32).collect();
                v.sort_unstable();
                v
            })
            .collect();

        let mut pieces = Vec::new();
        let mut starts = Vec::with_capacity(n + 1);
        for a in 0..n {
            starts.push(pieces.len());
            let da = &disks[a];
            let mut cuts: Vec<(f64, u32)> = Vec::new();
            for &b in &neighbours[a] {
                let CirclePair::Crossing(pts) = circle_pair(da, &disks[b as usize], eps) else { continue };
                for (x, y) in pts {
                    for &c in &neighbours[a] {
                        let dc = &disks[c as usize];
                        if c != b && ((x - dc.cx).hypot(y - dc.cy) - dc.r).abs() <= tol(a, c as usize) {
                            return Err(Error::Degenerate(a, b as usize));
                        }
                    }
                    cuts.push((angle_of(da, x, y), b));
                }
            }
            cuts.sort_unstable_by(|p, q| p.0.total_cmp(&q.0));
            let spans: Vec<(f64, f64, Option<u32>)> = if cuts.is_empty() {
                vec![(0.0, TAU, None)]
            } else {
                let m = cuts.len();
                (0..m)
                    .map(|k| {
                        let (t0, _) = cuts[k];
                        let (t1, end) = if k + 1 < m { cuts[k + 1] } else { (cuts[0].0 + TAU, cuts[0].1) };
                        (t0, t1, Some(end))
                    })
                    .collect()
            };
            for (t0, t1, end) in spans {
                let (x, y) = point_at(da, 0.5 * (t0 + t1));
                let inside = neighbours[a]
                    .iter()
                    .copied()
                    .filter(|&c| {
                        let dc = &disks[c as usize];
                        (x - dc.cx).hypot(y - dc.cy) < dc.r
                    })
                    .collect();
                pieces.push(Piece {
                    t0,
                    t1,
                    inside,
                    end,
                });
            }
        }
        starts.push(pieces.len());
        Ok(Arrangement {
            disks: disks.to_vec(),
            neighbours,
            pieces,
            starts,
        })
    }

    pub fn neighbours(&self, i: usize) -> &[u32] {
        &self.neighbours[i]
    }

    pub fn pieces_of(&self, i: usize) -> &[Piece] {
        &self.pieces[self.starts[i]..self.starts[i + 1]]
    }

    #[cfg(test)]
    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    /// Boundary of the region `{p : p is covered by >= 2 disks, one in the
    /// group}`, restricted to the circles in `candidates` (which must contain
    /// every circle that can bound it).
    pub fn boundary(&self, candidates: &[u32], in_group: impl Fn(u32) -> bool) -> Boundary {
        let mut out = Boundary::default();
        let is_candidate = |c: u32| candidates.binary_search(&c).is_ok();
        for &a in candidates {
            let pieces = self.pieces_of(a as usize);
            let m = pieces.len();
            let on: Vec<Option<bool>> = pieces
                .iter()
                .map(|p| {
                    let with = member(&p.inside, &[a], &in_group);
                    (with != member(&p.inside, &[], &in_group)).then_some(with)
                })
                .collect();
            // Junction k sits between piece k and piece k + 1.
            let mut vertex_at = vec![false; m];
            for (k, p) in pieces.iter().enumerate() {
                let Some(b) = p.end else { continue };
                let c0: Vec<u32> = p.inside.iter().copied().filter(|&c| c != b).collect();
                let quadrants = [
                    member(&c0, &[], &in_group),
                    member(&c0, &[a], &in_group),
                    member(&c0, &[b], &in_group),
                    member(&c0, &[a, b], &in_group),
                ];
                if quadrants.iter().filter(|&&q| q).count() % 2 == 1 {
                    vertex_at[k] = true;
                    if a < b || !is_candidate(b) {
                        let (x, y) = point_at(&self.disks[a as usize], p.t1);
                        let (i, j) = (a.min(b) as usize, a.max(b) as usize);
                        out.vertices.push(Vertex {
                            x,
                            y,
                            circles: (i, j),
                            level: c0.len(),
                        });
                    }
                }
            }
            let mut runs = 0;
            for k in 0..m {
                let prev = (k + m - 1) % m;
                if let Some(inner) = on[k] {
                    out.arcs.push(Arc {
                        disk: self.disks[a as usize],
                        t0: pieces[k].t0,
                        t1: pieces[k].t1,
                        inner,
                    });
                    if on[prev].is_none() || vertex_at[prev] {
                        runs += 1;
                    }
                }
            }
            if runs == 0 && on.iter().any(Option::is_some) {
                runs = 1;
            }
            out.edges += runs;
        }
        out
    }

    /// Whether `o_a ∩ o_b ∩ o_c` is non-empty, for pairwise overlapping disks.
    pub fn triple_meets(&self, a: usize, b: usize, c: usize, eps: f64) -> bool {
        let ds = [self.disks[a], self.disks[b], self.disks[c]];
        let in_all = |x: f64, y: f64| ds.iter().all(|d| d.contains(x, y, eps));
        if ds.iter().any(|d| in_all(d.cx - d.r, d.cy)) {
            return true;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            match circle_pair(&ds[p], &ds[q], eps) {
                CirclePair::Crossing(pts) => {
                    if pts.iter().any(|&(x, y)| in_all(x, y)) {
                        return true;
                    }
                }
                CirclePair::Nested { inner_first } => {
                    let inner = if inner_first { ds[p] } else { ds[q] };
                    if in_all(inner.cx - inner.r, inner.cy) {
                        return true;
                    }
                }
                CirclePair::Disjoint => return false,
            }
        }
        false
    }
}

/// A point inside the lens `o_a ∩ o_b` of two overlapping disks.
pub(crate) fn lens_point(a: &Disk, b: &Disk) -> (f64, f64) {
    let (dx, dy) = (b.cx - a.cx, b.cy - a.cy);
    let d = dx.hypot(dy);
    if d + b.r <= a.r {
        return (b.cx, b.cy);
    }
    if d + a.r <= b.r {
        return (a.cx, a.cy);
    }
    let lo = (-a.r).max(d - b.r);
    let hi = a.r.min(d + b.r);
    let t = 0.5 * (lo + hi);
    (a.cx + t * dx / d, a.cy + t * dy / d)
}

/// Splits an arc into x-monotone pieces at multiples of `π`. Returns
/// `(t0, t1, upper)` triples.
pub(crate) fn monotone_parts(t0: f64, t1: f64) -> impl Iterator<Item = (f64, f64, bool)> {
    let first = (t0 / PI).floor() as i64;
    let last = (t1 / PI).ceil() as i64;
    (first..last).filter_map(move |k| {
        let (a, b) = ((k as f64 * PI).max(t0), ((k + 1) as f64 * PI).min(t1));
        (b > a).then_some((a, b, k.rem_euclid(2) == 0))
    })
}
