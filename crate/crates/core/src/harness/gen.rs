//! Deterministic random instances.
//!
//! Object sizes shrink with `n` so the expected number of intersecting pairs
//! per object stays roughly constant. In the [`Regime::FixedK`] regime query
//! ranges shrink the same way, which keeps the expected answer size constant
//! as `n` grows.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{circle_pair, AxisSeg2, Box3, CirclePair, Coord, Disk, Rect2};

use super::instance::{Instance, Kind, Objects, Query};

/// Coordinates of generated objects and queries lie in `[0, DOMAIN]`.
pub const DOMAIN: Coord = 1_000_000;

/// Minimum separation between generated circles and from triple points.
pub const DISK_MARGIN: f64 = 1.0;

const DISK_ATTEMPTS: usize = 10_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Regime {
    /// Query sides up to 30% of the domain.
    #[default]
    Random,
    /// Query area proportional to `1/n`.
    FixedK,
}

#[derive(Clone, Copy, Debug)]
pub struct GenParams {
    pub kind: Kind,
    pub n: usize,
    pub queries: usize,
    pub seed: u64,
    pub regime: Regime,
}

impl GenParams {
    pub fn new(kind: Kind, n: usize, queries: usize, seed: u64) -> Self {
        GenParams {
            kind,
            n,
            queries,
            seed,
            regime: Regime::Random,
        }
    }

    pub fn fixed_k(self) -> Self {
        GenParams {
            regime: Regime::FixedK,
            ..self
        }
    }
}

/// Typical object extent for `n` objects in `dim` dimensions.
fn extent(n: usize, dim: i32, c: f64) -> f64 {
    DOMAIN as f64 * c / (n.max(1) as f64).powf(1.0 / dim as f64)
}

/// An interval of length `len` placed uniformly inside the domain.
fn place(rng: &mut ChaCha8Rng, len: Coord) -> (Coord, Coord) {
    let len = len.clamp(0, DOMAIN);
    let lo = rng.gen_range(0..=DOMAIN - len);
    (lo, lo + len)
}

fn side(rng: &mut ChaCha8Rng, max: f64) -> Coord {
    rng.gen_range(1..=(max as Coord).max(1))
}

/// A box with shortest side `a` and the others in `[a, alpha * a]`, axes
/// shuffled.
fn fat_box(rng: &mut ChaCha8Rng, a: Coord, alpha: f64) -> Box3 {
    let mut sides = [a, 0, 0];
    for s in &mut sides[1..] {
        *s = ((a as f64 * rng.gen_range(1.0..=alpha)).floor() as Coord).max(a);
    }
    let k = rng.gen_range(0..3);
    sides.swap(0, k);
    let (x, y, z) = (place(rng, sides[0]), place(rng, sides[1]), place(rng, sides[2]));
    Box3::new(x, y, z).expect("generated ranges are ordered")
}

pub fn generate(p: &GenParams) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let n = p.n;
    let objects = match p.kind {
        Kind::Segments => {
            let s = extent(n, 2, 1.5);
            Objects::Segments(
                (0..n)
                    .map(|_| {
                        let len = rng.gen_range(0..=(2.0 * s) as Coord);
                        let fixed = rng.gen_range(0..=DOMAIN);
                        let (lo, hi) = place(&mut rng, len);
                        if rng.gen_bool(0.5) {
                            AxisSeg2::horizontal(fixed, lo, hi)
                        } else {
                            AxisSeg2::vertical(fixed, lo, hi)
                        }
                        .expect("generated ranges are ordered")
                    })
                    .collect(),
            )
        }
        Kind::Rects => {
            let s = extent(n, 2, 1.2);
            Objects::Rects(
                (0..n)
                    .map(|_| {
                        let (w, h) = (side(&mut rng, s), side(&mut rng, s));
                        let (x, y) = (place(&mut rng, w), place(&mut rng, h));
                        Rect2::new(x.0, x.1, y.0, y.1).expect("generated ranges are ordered")
                    })
                    .collect(),
            )
        }
        Kind::Boxes => {
            let s = extent(n, 3, 1.2);
            Objects::Boxes(
                (0..n)
                    .map(|_| {
                        let (x, y, z) = (side(&mut rng, s), side(&mut rng, s), side(&mut rng, s));
                        let (x, y, z) = (place(&mut rng, x), place(&mut rng, y), place(&mut rng, z));
                        Box3::new(x, y, z).expect("generated ranges are ordered")
                    })
                    .collect(),
            )
        }
        Kind::Cubes | Kind::FatBoxes { .. } => {
            let alpha = p.kind.alpha().unwrap_or(1.0);
            let s = extent(n, 3, 1.0) / alpha.cbrt();
            Objects::Boxes(
                (0..n)
                    .map(|_| {
                        let a = side(&mut rng, s);
                        fat_box(&mut rng, a, alpha)
                    })
                    .collect(),
            )
        }
        Kind::Disks => Objects::Disks(disks(&mut rng, n)?),
    };
    let queries = (0..p.queries).map(|_| query(&mut rng, p)).collect();
    Instance::new(p.kind, p.seed, objects, queries)
}

fn query(rng: &mut ChaCha8Rng, p: &GenParams) -> Query {
    let dim = if p.kind.is_3d() { 3 } else { 2 };
    let max = match p.regime {
        Regime::Random => 0.3 * DOMAIN as f64,
        Regime::FixedK => extent(p.n, dim, if dim == 2 { 4.0 } else { 2.5 }),
    };
    let cap = (max as Coord).min(DOMAIN);
    let len = |rng: &mut ChaCha8Rng| rng.gen_range(0..=cap);
    match p.kind.alpha() {
        Some(alpha) => {
            let a = len(rng);
            Query::Box(fat_box(rng, a, alpha))
        }
        None if dim == 3 => {
            let (x, y, z) = (len(rng), len(rng), len(rng));
            let (x, y, z) = (place(rng, x), place(rng, y), place(rng, z));
            Query::Box(Box3::new(x, y, z).expect("generated ranges are ordered"))
        }
        None => {
            let (w, h) = (len(rng), len(rng));
            let (x, y) = (place(rng, w), place(rng, h));
            Query::Rect(Rect2::new(x.0, x.1, y.0, y.1).expect("generated ranges are ordered"))
        }
    }
}

/// Whether `d` keeps every placed disk in general position with margin `m`.
fn disk_fits(d: &Disk, placed: &[Disk], m: f64) -> bool {
    let near: Vec<&Disk> = placed
        .iter()
        .filter(|e| (e.cx - d.cx).hypot(e.cy - d.cy) < e.r + d.r + m)
        .collect();
    let off_circle = |c: &Disk, (x, y): (f64, f64)| ((x - c.cx).hypot(y - c.cy) - c.r).abs() >= m;
    for e in &near {
        let dist = (e.cx - d.cx).hypot(e.cy - d.cy);
        if dist < m || (dist - (e.r + d.r)).abs() < m || (dist - (e.r - d.r).abs()).abs() < m {
            return false;
        }
    }
    for (a, e) in near.iter().enumerate() {
        if let CirclePair::Crossing(pts) = circle_pair(d, e, 0.0) {
            for f in near.iter().filter(|f| !std::ptr::eq(**f, *e)) {
                if !pts.iter().all(|&p| off_circle(f, p)) {
                    return false;
                }
            }
        }
        for f in &near[a + 1..] {
            if let CirclePair::Crossing(pts) = circle_pair(e, f, 0.0) {
                if !pts.iter().all(|&p| off_circle(d, p)) {
                    return false;
                }
            }
        }
    }
    true
}

fn disks(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<Disk>> {
    let s = extent(n, 2, 1.0);
    let dom = DOMAIN as f64;
    let mut out: Vec<Disk> = Vec::with_capacity(n);
    for _ in 0..n {
        let fresh = (0..DISK_ATTEMPTS).find_map(|_| {
            let r = rng.gen_range(0.25 * s..0.6 * s).min(0.5 * dom);
            let d = Disk::new(rng.gen_range(r..=dom - r), rng.gen_range(r..=dom - r), r).ok()?;
            disk_fits(&d, &out, DISK_MARGIN).then_some(d)
        });
        out.push(fresh.ok_or_else(|| Error::InvalidParam(format!("could not place disk {} in general position", out.len())))?);
    }
    Ok(out)
}
