//! Exact geometric primitives shared by the engines and the oracle.
//!
//! Orthogonal objects live on a 64-bit integer grid and every predicate on
//! them is exact. All regions are closed, so a boundary touch counts as an
//! intersection. Disks use `f64` with a small relative tolerance.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coordinate type for all orthogonal objects and queries.
pub type Coord = i64;

/// A closed interval `[lo, hi]` on the integer line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Coord,
    pub hi: Coord,
}

impl Interval {
    pub fn new(lo: Coord, hi: Coord) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub const fn point(x: Coord) -> Self {
        Interval { lo: x, hi: x }
    }

    /// The whole coordinate line.
    pub const fn everything() -> Self {
        Interval {
            lo: Coord::MIN,
            hi: Coord::MAX,
        }
    }

    #[inline]
    pub fn contains(&self, x: Coord) -> bool {
        self.lo <= x && x <= self.hi
    }

    #[inline]
    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    #[inline]
    pub fn covers(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    #[inline]
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Length as an unsigned value, saturating at `u64::MAX`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> u64 {
        self.hi.abs_diff(self.lo)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point2 {
    pub x: Coord,
    pub y: Coord,
}

impl Point2 {
    pub const fn new(x: Coord, y: Coord) -> Self {
        Point2 { x, y }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point3 {
    pub x: Coord,
    pub y: Coord,
    pub z: Coord,
}

impl Point3 {
    pub const fn new(x: Coord, y: Coord, z: Coord) -> Self {
        Point3 { x, y, z }
    }

    pub fn coord(&self, axis: Axis) -> Coord {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Z => self.z,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Horizontal => Orientation::Vertical,
            Orientation::Vertical => Orientation::Horizontal,
        }
    }
}

/// An axis-parallel segment. `fixed` is the y coordinate of a horizontal
/// segment and the x coordinate of a vertical one; `span` is the other axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AxisSeg2 {
    pub orientation: Orientation,
    pub fixed: Coord,
    pub span: Interval,
}

impl AxisSeg2 {
    pub fn horizontal(y: Coord, x0: Coord, x1: Coord) -> Result<Self> {
        Ok(AxisSeg2 {
            orientation: Orientation::Horizontal,
            fixed: y,
            span: Interval::new(x0, x1)?,
        })
    }

    pub fn vertical(x: Coord, y0: Coord, y1: Coord) -> Result<Self> {
        Ok(AxisSeg2 {
            orientation: Orientation::Vertical,
            fixed: x,
            span: Interval::new(y0, y1)?,
        })
    }

    pub fn is_horizontal(&self) -> bool {
        self.orientation == Orientation::Horizontal
    }

    /// The two endpoints, low end first.
    pub fn endpoints(&self) -> [Point2; 2] {
        match self.orientation {
            Orientation::Horizontal => [
                Point2::new(self.span.lo, self.fixed),
                Point2::new(self.span.hi, self.fixed),
            ],
            Orientation::Vertical => [
                Point2::new(self.fixed, self.span.lo),
                Point2::new(self.fixed, self.span.hi),
            ],
        }
    }

    /// The segment viewed as a (possibly degenerate) rectangle.
    pub fn as_rect(&self) -> Rect2 {
        match self.orientation {
            Orientation::Horizontal => Rect2 {
                xs: self.span,
                ys: Interval::point(self.fixed),
            },
            Orientation::Vertical => Rect2 {
                xs: Interval::point(self.fixed),
                ys: self.span,
            },
        }
    }

    /// Clip to a rectangle; `None` if the segment misses it.
    pub fn clip(&self, r: &Rect2) -> Option<AxisSeg2> {
        let (fixed_range, span_range) = match self.orientation {
            Orientation::Horizontal => (r.ys, r.xs),
            Orientation::Vertical => (r.xs, r.ys),
        };
        if !fixed_range.contains(self.fixed) {
            return None;
        }
        let span = self.span.intersect(&span_range)?;
        Some(AxisSeg2 { span, ..*self })
    }

    pub fn intersects_rect(&self, r: &Rect2) -> bool {
        self.clip(r).is_some()
    }
}

/// A closed axis-aligned rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rect2 {
    pub xs: Interval,
    pub ys: Interval,
}

impl Rect2 {
    pub fn new(x0: Coord, x1: Coord, y0: Coord, y1: Coord) -> Result<Self> {
        Ok(Rect2 {
            xs: Interval::new(x0, x1)?,
            ys: Interval::new(y0, y1)?,
        })
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.xs.contains(p.x) && self.ys.contains(p.y)
    }

    pub fn intersects(&self, other: &Rect2) -> bool {
        self.xs.overlaps(&other.xs) && self.ys.overlaps(&other.ys)
    }

    pub fn corners(&self) -> [Point2; 4] {
        [
            Point2::new(self.xs.lo, self.ys.lo),
            Point2::new(self.xs.hi, self.ys.lo),
            Point2::new(self.xs.lo, self.ys.hi),
            Point2::new(self.xs.hi, self.ys.hi),
        ]
    }

    /// Edges as segments: left, right, bottom, top.
    pub fn edges(&self) -> [AxisSeg2; 4] {
        let v = |x| AxisSeg2 {
            orientation: Orientation::Vertical,
            fixed: x,
            span: self.ys,
        };
        let h = |y| AxisSeg2 {
            orientation: Orientation::Horizontal,
            fixed: y,
            span: self.xs,
        };
        [v(self.xs.lo), v(self.xs.hi), h(self.ys.lo), h(self.ys.hi)]
    }
}

/// A closed axis-aligned box in three dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Box3 {
    pub xs: Interval,
    pub ys: Interval,
    pub zs: Interval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// The two remaining axes in cyclic order.
    pub fn others(self) -> (Axis, Axis) {
        match self {
            Axis::X => (Axis::Y, Axis::Z),
            Axis::Y => (Axis::Z, Axis::X),
            Axis::Z => (Axis::X, Axis::Y),
        }
    }
}

impl Box3 {
    pub fn new(x: (Coord, Coord), y: (Coord, Coord), z: (Coord, Coord)) -> Result<Self> {
        Ok(Box3 {
            xs: Interval::new(x.0, x.1)?,
            ys: Interval::new(y.0, y.1)?,
            zs: Interval::new(z.0, z.1)?,
        })
    }

    pub fn from_intervals(xs: Interval, ys: Interval, zs: Interval) -> Self {
        Box3 { xs, ys, zs }
    }

    pub fn range(&self, axis: Axis) -> Interval {
        match axis {
            Axis::X => self.xs,
            Axis::Y => self.ys,
            Axis::Z => self.zs,
        }
    }

    pub fn with_range(&self, axis: Axis, iv: Interval) -> Box3 {
        let mut b = *self;
        match axis {
            Axis::X => b.xs = iv,
            Axis::Y => b.ys = iv,
            Axis::Z => b.zs = iv,
        }
        b
    }

    pub fn contains(&self, p: Point3) -> bool {
        self.xs.contains(p.x) && self.ys.contains(p.y) && self.zs.contains(p.z)
    }

    pub fn intersects(&self, other: &Box3) -> bool {
        self.xs.overlaps(&other.xs) && self.ys.overlaps(&other.ys) && self.zs.overlaps(&other.zs)
    }

    pub fn min_corner(&self) -> Point3 {
        Point3::new(self.xs.lo, self.ys.lo, self.zs.lo)
    }

    pub fn vertices(&self) -> [Point3; 8] {
        let mut out = [Point3::new(0, 0, 0); 8];
        for (k, v) in out.iter_mut().enumerate() {
            *v = Point3::new(
                if k & 1 == 0 { self.xs.lo } else { self.xs.hi },
                if k & 2 == 0 { self.ys.lo } else { self.ys.hi },
                if k & 4 == 0 { self.zs.lo } else { self.zs.hi },
            );
        }
        out
    }

    /// Projection onto the plane spanned by the two axes other than `axis`,
    /// in the order given by [`Axis::others`].
    pub fn project(&self, axis: Axis) -> Rect2 {
        let (a, b) = axis.others();
        Rect2 {
            xs: self.range(a),
            ys: self.range(b),
        }
    }

    /// Ratio of the longest to the shortest side; infinite for degenerate boxes.
    pub fn aspect_ratio(&self) -> f64 {
        let lens = [self.xs.len(), self.ys.len(), self.zs.len()];
        let min = *lens.iter().min().unwrap();
        let max = *lens.iter().max().unwrap();
        if min == 0 {
            return if max == 0 { 1.0 } else { f64::INFINITY };
        }
        max as f64 / min as f64
    }

    pub fn is_cube(&self) -> bool {
        self.xs.len() == self.ys.len() && self.ys.len() == self.zs.len()
    }
}

/// A closed disk with real coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub cx: f64,
    pub cy: f64,
    pub r: f64,
}

impl Disk {
    pub fn new(cx: f64, cy: f64, r: f64) -> Result<Self> {
        if !(cx.is_finite() && cy.is_finite() && r.is_finite()) || r <= 0.0 {
            return Err(Error::InvalidDisk { cx, cy, r });
        }
        Ok(Disk { cx, cy, r })
    }

    pub fn contains(&self, x: f64, y: f64, eps: f64) -> bool {
        let d = (x - self.cx).hypot(y - self.cy);
        d <= self.r + eps * self.scale()
    }

    /// Strict containment, shrinking the disk by the tolerance.
    pub fn contains_strictly(&self, x: f64, y: f64, eps: f64) -> bool {
        let d = (x - self.cx).hypot(y - self.cy);
        d < self.r - eps * self.scale()
    }

    /// Magnitude used to scale the relative tolerance.
    pub fn scale(&self) -> f64 {
        1.0f64.max(self.cx.abs()).max(self.cy.abs()).max(self.r)
    }

    pub fn bbox(&self) -> RealRect {
        RealRect {
            x0: self.cx - self.r,
            x1: self.cx + self.r,
            y0: self.cy - self.r,
            y1: self.cy + self.r,
        }
    }
}

/// A closed axis-aligned rectangle with real coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealRect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl RealRect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        if !(x0.is_finite() && x1.is_finite() && y0.is_finite() && y1.is_finite())
            || x0 > x1
            || y0 > y1
        {
            return Err(Error::InvalidRealRect);
        }
        Ok(RealRect { x0, x1, y0, y1 })
    }

    pub fn contains(&self, x: f64, y: f64, eps: f64) -> bool {
        let tol = eps * self.scale();
        self.x0 - tol <= x && x <= self.x1 + tol && self.y0 - tol <= y && y <= self.y1 + tol
    }

    pub fn corners(&self) -> [(f64, f64); 4] {
        [
            (self.x0, self.y0),
            (self.x1, self.y0),
            (self.x1, self.y1),
            (self.x0, self.y1),
        ]
    }

    pub fn scale(&self) -> f64 {
        1.0f64
            .max(self.x0.abs())
            .max(self.x1.abs())
            .max(self.y0.abs())
            .max(self.y1.abs())
    }
}

impl From<Rect2> for RealRect {
    fn from(r: Rect2) -> Self {
        RealRect {
            x0: r.xs.lo as f64,
            x1: r.xs.hi as f64,
            y0: r.ys.lo as f64,
            y1: r.ys.hi as f64,
        }
    }
}

/// Index of an object inside its [`ObjectSet`](crate::ObjectSet).
pub type ObjectId = usize;

/// An unordered pair of distinct objects, stored with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairId {
    i: ObjectId,
    j: ObjectId,
}

impl PairId {
    /// Canonical pair for two distinct ids in either order.
    pub fn new(a: ObjectId, b: ObjectId) -> Option<PairId> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(PairId { i: a, j: b }),
            std::cmp::Ordering::Greater => Some(PairId { i: b, j: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn i(&self) -> ObjectId {
        self.i
    }

    pub fn j(&self) -> ObjectId {
        self.j
    }
}

pub fn rect_intersect(a: &Rect2, b: &Rect2) -> Option<Rect2> {
    Some(Rect2 {
        xs: a.xs.intersect(&b.xs)?,
        ys: a.ys.intersect(&b.ys)?,
    })
}

pub fn box_intersect(a: &Box3, b: &Box3) -> Option<Box3> {
    Some(Box3 {
        xs: a.xs.intersect(&b.xs)?,
        ys: a.ys.intersect(&b.ys)?,
        zs: a.zs.intersect(&b.zs)?,
    })
}

/// Crossing point of a horizontal and a vertical segment.
pub fn seg_pair_point(h: &AxisSeg2, v: &AxisSeg2) -> Result<Option<Point2>> {
    if h.orientation != Orientation::Horizontal || v.orientation != Orientation::Vertical {
        return Err(Error::OrientationMismatch);
    }
    Ok((h.span.contains(v.fixed) && v.span.contains(h.fixed)).then(|| Point2::new(v.fixed, h.fixed)))
}

pub const DEFAULT_DISK_EPS: f64 = 1e-9;

/// Tolerance for disk arithmetic. `RANGE_PAIR_EPS` overrides the default.
pub fn disk_eps() -> f64 {
    static EPS: OnceLock<f64> = OnceLock::new();
    *EPS.get_or_init(|| {
        std::env::var("RANGE_PAIR_EPS")
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|e| e.is_finite() && *e >= 0.0)
            .unwrap_or(DEFAULT_DISK_EPS)
    })
}

/// How two circles relate to each other.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CirclePair {
    Disjoint,
    /// One disk lies inside the other; `inner_first` tells which.
    Nested { inner_first: bool },
    Crossing([(f64, f64); 2]),
}

/// Classify two circles and return their crossing points if they cross.
///
/// Tangencies within tolerance are reported as crossing at the (doubled)
/// touching point.
pub fn circle_pair(a: &Disk, b: &Disk, eps: f64) -> CirclePair {
    let dx = b.cx - a.cx;
    let dy = b.cy - a.cy;
    let d = dx.hypot(dy);
    let tol = eps * a.scale().max(b.scale());
    if d > a.r + b.r + tol {
        return CirclePair::Disjoint;
    }
    if d + a.r.min(b.r) < a.r.max(b.r) - tol || d == 0.0 {
        return CirclePair::Nested {
            inner_first: a.r <= b.r,
        };
    }
    // Distance from a's center to the chord along the center line.
    let along = (d * d + a.r * a.r - b.r * b.r) / (2.0 * d);
    let h = (a.r * a.r - along * along).max(0.0).sqrt();
    let (ux, uy) = (dx / d, dy / d);
    let mx = a.cx + along * ux;
    let my = a.cy + along * uy;
    CirclePair::Crossing([(mx - h * uy, my + h * ux), (mx + h * uy, my - h * ux)])
}

/// Intersections of the segment `p0 -> p1` with the boundary circle of `d`.
fn segment_circle_points(p0: (f64, f64), p1: (f64, f64), d: &Disk) -> Vec<(f64, f64)> {
    let (dx, dy) = (p1.0 - p0.0, p1.1 - p0.1);
    let a = dx * dx + dy * dy;
    if a == 0.0 {
        return Vec::new();
    }
    let (fx, fy) = (p0.0 - d.cx, p0.1 - d.cy);
    let b = 2.0 * (fx * dx + fy * dy);
    let c = fx * fx + fy * fy - d.r * d.r;
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let s = disc.sqrt();
    let mut out = Vec::with_capacity(2);
    for t in [(-b - s) / (2.0 * a), (-b + s) / (2.0 * a)] {
        if (-1e-12..=1.0 + 1e-12).contains(&t) {
            let t = t.clamp(0.0, 1.0);
            out.push((p0.0 + t * dx, p0.1 + t * dy));
        }
    }
    out
}

/// Closest point of a rectangle to a given point.
fn clamp_to_rect(q: &RealRect, x: f64, y: f64) -> (f64, f64) {
    (x.clamp(q.x0, q.x1), y.clamp(q.y0, q.y1))
}

/// Whether the closed region `d1 ∩ d2 ∩ q` is non-empty.
pub fn lens_rect_intersects(d1: &Disk, d2: &Disk, q: &RealRect) -> bool {
    lens_rect_intersects_eps(d1, d2, q, disk_eps())
}

pub fn lens_rect_intersects_eps(d1: &Disk, d2: &Disk, q: &RealRect, eps: f64) -> bool {
    let in_both = |x: f64, y: f64| d1.contains(x, y, eps) && d2.contains(x, y, eps);
    match circle_pair(d1, d2, eps) {
        CirclePair::Disjoint => false,
        CirclePair::Nested { inner_first } => {
            let inner = if inner_first { d1 } else { d2 };
            let (x, y) = clamp_to_rect(q, inner.cx, inner.cy);
            inner.contains(x, y, eps)
        }
        CirclePair::Crossing(pts) => {
            // A vertex of the lens inside q.
            if pts.iter().any(|&(x, y)| q.contains(x, y, eps)) {
                return true;
            }
            // A corner of q inside the lens.
            if q.corners().iter().any(|&(x, y)| in_both(x, y)) {
                return true;
            }
            // An edge of q crossing a boundary arc of the lens.
            let cs = q.corners();
            for k in 0..4 {
                let (p0, p1) = (cs[k], cs[(k + 1) % 4]);
                for (circle, other) in [(d1, d2), (d2, d1)] {
                    for (x, y) in segment_circle_points(p0, p1, circle) {
                        if other.contains(x, y, eps) {
                            return true;
                        }
                    }
                }
            }
            false
        }
    }
}
