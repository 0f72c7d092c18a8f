//! Static orthogonal reporting structures.
//!
//! All structures are immutable after `build`, report each matching object
//! exactly once, and expose a `storage()` count of stored entries so the
//! bench harness can track their size.

mod cross;
mod enclosure;
mod intersect;
mod range;
pub mod tree;

pub use cross::{CrossReport, SegWindowing};
pub use enclosure::{PointEnclosure2D, PointEnclosure3D};
pub use intersect::{BoxIntersect3D, RectIntersect2D};
pub use range::{RangeReport2D, RangeReport3D};
