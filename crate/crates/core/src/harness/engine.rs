//! Uniform access to the engines for the harness.

use crate::box3d::BoxIndex;
use crate::error::{Error, Result};
use crate::fat3d::FatIndex;
use crate::geom::RealRect;
use crate::rect2d::RectIndex;
use crate::seg2d::SegIndex;
use crate::sets::{PairReport, SeedSet};
use crate::union2d::UnionIndex;

use super::instance::{Instance, Kind, Objects, Query};

/// Pairs reported for one query together with the seeds used.
#[derive(Clone, Debug, Default)]
pub struct Answer {
    pub pairs: PairReport,
    pub seeds: SeedSet,
}

/// Something that answers pair queries over a fixed instance.
pub trait PairEngine {
    fn answer(&self, q: &Query) -> Result<Answer>;

    /// Stored entries, for reporting.
    fn storage(&self) -> usize {
        0
    }
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Engine {
    Segments(SegIndex),
    Rects(RectIndex),
    Boxes(BoxIndex),
    Fat(FatIndex),
    Disks(UnionIndex),
}

fn mismatch(kind: &str, q: &Query) -> Error {
    Error::KindMismatch {
        expected: kind.to_string(),
        found: format!("{q:?}"),
    }
}

impl Engine {
    pub fn build(inst: &Instance) -> Result<Engine> {
        Ok(match (&inst.objects, inst.kind) {
            (Objects::Segments(v), _) => Engine::Segments(SegIndex::build(v.clone())),
            (Objects::Rects(v), _) => Engine::Rects(RectIndex::build(v.clone())),
            (Objects::Boxes(v), Kind::Boxes) => Engine::Boxes(BoxIndex::build(v.clone())),
            (Objects::Boxes(v), kind) => {
                let alpha = kind.alpha().ok_or_else(|| Error::InvalidParam(format!("no fat engine for {kind}")))?;
                Engine::Fat(FatIndex::build(v.clone(), alpha)?)
            }
            (Objects::Disks(v), _) => Engine::Disks(UnionIndex::build(v.clone())?),
        })
    }
}

impl PairEngine for Engine {
    fn answer(&self, q: &Query) -> Result<Answer> {
        let (pairs, seeds) = match (self, q) {
            (Engine::Segments(e), Query::Rect(r)) => e.query_with_seeds(r),
            (Engine::Rects(e), Query::Rect(r)) => e.query_with_seeds(r),
            (Engine::Boxes(e), Query::Box(b)) => e.query_with_seeds(b),
            (Engine::Fat(e), Query::Box(b)) => e.query_with_seeds(b)?,
            (Engine::Disks(e), Query::Rect(r)) => e.query_with_seeds(&RealRect::from(*r)),
            (Engine::Segments(_), _) => return Err(mismatch("segments", q)),
            (Engine::Rects(_), _) => return Err(mismatch("rects", q)),
            (Engine::Boxes(_) | Engine::Fat(_), _) => return Err(mismatch("boxes", q)),
            (Engine::Disks(_), _) => return Err(mismatch("disks", q)),
        };
        Ok(Answer { pairs, seeds })
    }

    fn storage(&self) -> usize {
        match self {
            Engine::Segments(e) => e.storage(),
            Engine::Rects(e) => e.storage(),
            Engine::Boxes(e) => e.storage(),
            Engine::Fat(e) => e.storage(),
            Engine::Disks(e) => e.storage(),
        }
    }
}
