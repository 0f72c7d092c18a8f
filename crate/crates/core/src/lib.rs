//! Reporting all pairs of objects that intersect inside an axis-aligned
//! query range.
//!
//! Each engine preprocesses one class of objects. A query first collects a
//! small *seed set* that holds at least one member of every answer pair, then
//! expands each seed with an ordinary intersection query clipped to the range.
//!
//! | engine                     | objects                     |
//! |----------------------------|-----------------------------|
//! | [`seg2d::SegIndex`]        | horizontal/vertical segments |
//! | [`rect2d::RectIndex`]      | rectangles                  |
//! | [`box3d::BoxIndex`]        | boxes in 3D                 |
//! | [`fat3d::FatIndex`]        | boxes of bounded aspect ratio |
//! | [`union2d::UnionIndex`]    | disks                       |
//!
//! The [`harness`] module holds the brute-force oracle, instance generators,
//! the instance file format and the check/bench drivers used by the CLI.

pub mod box3d;
pub mod error;
pub mod fat3d;
pub mod geom;
pub mod harness;
pub mod ortho;
pub mod rect2d;
pub mod seg2d;
mod sets;
mod sweep;
pub mod union2d;

pub use error::{Error, Result};
pub use geom::{
    box_intersect, lens_rect_intersects, rect_intersect, seg_pair_point, Axis, AxisSeg2, Box3, Coord, Disk,
    Interval, ObjectId, Orientation, PairId, Point2, Point3, RealRect, Rect2,
};
pub use sets::{ObjectSet, PairReport, SeedSet};
