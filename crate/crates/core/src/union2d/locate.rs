//! Slab-based point location among x-monotone circular arcs.

use super::arrangement::{monotone_parts, Arc};

#[derive(Clone, Copy, Debug)]
struct Mono {
    cx: f64,
    cy: f64,
    r: f64,
    upper: bool,
    /// The region lies above the arc.
    region_above: bool,
}

impl Mono {
    fn y_at(&self, x: f64) -> f64 {
        let h = (self.r * self.r - (x - self.cx) * (x - self.cx)).max(0.0).sqrt();
        if self.upper { self.cy + h } else { self.cy - h }
    }
}

/// Trapezoid of the slab decomposition containing a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Trapezoid {
    Outside,
    /// Slab index and number of arcs below the point.
    Cell(u32, u32),
}

/// Locates points in the subdivision induced by a region's boundary arcs.
///
/// The x-range is cut at every arc endpoint; inside a slab no two arcs cross,
/// so arcs are sorted by height and a binary search finds the trapezoid.
#[derive(Clone, Debug, Default)]
pub(crate) struct SlabLocator {
    xs: Vec<f64>,
    offsets: Vec<u32>,
    order: Vec<u32>,
    arcs: Vec<Mono>,
}

impl SlabLocator {
    pub fn build(arcs: &[Arc]) -> Self {
        let mut monos = Vec::new();
        let mut spans = Vec::new();
        for a in arcs {
            let d = &a.disk;
            for (t0, t1, upper) in monotone_parts(a.t0, a.t1) {
                let (x0, x1) = (d.cx + d.r * t0.cos(), d.cx + d.r * t1.cos());
                let (lo, hi) = if x0 < x1 { (x0, x1) } else { (x1, x0) };
                if hi <= lo {
                    continue;
                }
                monos.push(Mono {
                    cx: d.cx,
                    cy: d.cy,
                    r: d.r,
                    upper,
                    region_above: upper != a.inner,
                });
                spans.push((lo, hi));
            }
        }
        let mut xs: Vec<f64> = spans.iter().flat_map(|&(lo, hi)| [lo, hi]).collect();
        xs.sort_unstable_by(f64::total_cmp);
        xs.dedup();
        let slabs = xs.len().saturating_sub(1);
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); slabs];
        for (k, &(lo, hi)) in spans.iter().enumerate() {
            let s0 = xs.partition_point(|&x| x < lo);
            let s1 = xs.partition_point(|&x| x < hi);
            for list in &mut lists[s0..s1] {
                list.push(k as u32);
            }
        }
        let mut offsets = Vec::with_capacity(slabs + 1);
        let mut order = Vec::new();
        for (s, mut list) in lists.into_iter().enumerate() {
            let mid = 0.5 * (xs[s] + xs[s + 1]);
            list.sort_unstable_by(|&a, &b| monos[a as usize].y_at(mid).total_cmp(&monos[b as usize].y_at(mid)));
            offsets.push(order.len() as u32);
            order.extend(list);
        }
        offsets.push(order.len() as u32);
        SlabLocator {
            xs,
            offsets,
            order,
            arcs: monos,
        }
    }

    /// Trapezoid containing `(x, y)` and whether the point is in the region.
    pub fn locate(&self, x: f64, y: f64) -> (Trapezoid, bool) {
        if self.xs.len() < 2 || x < self.xs[0] || x > self.xs[self.xs.len() - 1] {
            return (Trapezoid::Outside, false);
        }
        let s = (self.xs.partition_point(|&v| v <= x) - 1).min(self.xs.len() - 2);
        let list = &self.order[self.offsets[s] as usize..self.offsets[s + 1] as usize];
        let below = list.partition_point(|&k| self.arcs[k as usize].y_at(x) < y);
        let inside = below > 0 && self.arcs[list[below - 1] as usize].region_above;
        (Trapezoid::Cell(s as u32, below as u32), inside)
    }

    /// Whether the segment between two points sharing an x (or, for a
    /// transposed locator, a y) coordinate meets the region.
    pub fn segment_meets(&self, p: (f64, f64), q: (f64, f64)) -> bool {
        let (tp, ip) = self.locate(p.0, p.1);
        if ip {
            return true;
        }
        let (tq, iq) = self.locate(q.0, q.1);
        iq || tp != tq
    }

    pub fn storage(&self) -> usize {
        self.xs.len() + self.order.len() + self.arcs.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Disk;
    use std::f64::consts::TAU;

    #[test]
    fn full_circle_inside_and_outside() {
        let disk = Disk::new(0.0, 0.0, 2.0).unwrap();
        let loc = SlabLocator::build(&[Arc { disk, t0: 0.0, t1: TAU, inner: true }]);
        assert!(loc.locate(0.5, 0.5).1);
        assert!(!loc.locate(0.0, 3.0).1);
        assert!(!loc.locate(5.0, 0.0).1);
        assert!(loc.segment_meets((1.0, -5.0), (1.0, 5.0)));
        assert!(!loc.segment_meets((1.0, 2.5), (1.0, 5.0)));
        assert!(!loc.segment_meets((3.0, -5.0), (3.0, 5.0)));
    }

    #[test]
    fn hole_region() {
        // Region outside the circle but within the full slab range.
        let disk = Disk::new(0.0, 0.0, 1.0).unwrap();
        let loc = SlabLocator::build(&[Arc { disk, t0: 0.0, t1: TAU, inner: false }]);
        assert!(!loc.locate(0.0, 0.0).1);
        assert!(loc.locate(0.0, 1.5).1);
    }
}
