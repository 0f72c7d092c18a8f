//! Orthogonal range reporting on static point sets.

use std::ops::ControlFlow;

use super::tree::{Hit, KeyTree};
use crate::geom::{Box3, Coord, Point2, Point3, Rect2};

/// Layered 2D range tree: a balanced tree on x whose nodes keep their points
/// sorted by y.
#[derive(Clone, Debug)]
pub struct RangeReport2D<C = Coord> {
    pts: Vec<(C, C)>,
    payload: Vec<usize>,
    tree: KeyTree<C, Vec<(C, u32)>>,
}

impl<C: Copy + Ord> RangeReport2D<C> {
    pub fn build(points: impl IntoIterator<Item = ((C, C), usize)>) -> Self {
        let (pts, payload): (Vec<(C, C)>, Vec<usize>) = points.into_iter().unzip();
        let items = pts.iter().enumerate().map(|(k, p)| (p.0, k as u32)).collect();
        let tree = KeyTree::build(items, |ids| {
            let mut ys: Vec<(C, u32)> = ids.iter().map(|&k| (pts[k as usize].1, k)).collect();
            ys.sort_unstable();
            ys
        });
        RangeReport2D { pts, payload, tree }
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    /// Visit the payload of every point in `[x0, x1] × [y0, y1]` exactly once.
    pub fn visit(
        &self,
        (x0, x1): (C, C),
        (y0, y1): (C, C),
        f: &mut impl FnMut(usize) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if y0 > y1 {
            return ControlFlow::Continue(());
        }
        self.tree.visit(x0, x1, &mut |hit| {
            match hit {
                Hit::Node(ys) => {
                    let start = ys.partition_point(|&(y, _)| y < y0);
                    for &(y, k) in &ys[start..] {
                        if y > y1 {
                            break;
                        }
                        f(self.payload[k as usize])?;
                    }
                }
                Hit::Item(k) => {
                    let y = self.pts[k as usize].1;
                    if y0 <= y && y <= y1 {
                        f(self.payload[k as usize])?;
                    }
                }
            }
            ControlFlow::Continue(())
        })
    }

    pub fn query(&self, xr: (C, C), yr: (C, C)) -> Vec<usize> {
        let mut out = Vec::new();
        let _ = self.visit(xr, yr, &mut |id| {
            out.push(id);
            ControlFlow::Continue(())
        });
        out
    }

    pub fn any(&self, xr: (C, C), yr: (C, C)) -> bool {
        self.visit(xr, yr, &mut |_| ControlFlow::Break(())).is_break()
    }

    /// Stored entries: points plus their copies in every y-sorted list.
    pub fn storage(&self) -> usize {
        self.pts.len() + self.tree.assocs().map(Vec::len).sum::<usize>() + self.tree.node_count()
    }
}

impl RangeReport2D<Coord> {
    pub fn from_points(points: impl IntoIterator<Item = (Point2, usize)>) -> Self {
        Self::build(points.into_iter().map(|(p, id)| ((p.x, p.y), id)))
    }

    pub fn query_rect(&self, q: &Rect2) -> Vec<usize> {
        self.query((q.xs.lo, q.xs.hi), (q.ys.lo, q.ys.hi))
    }

    pub fn visit_rect(&self, q: &Rect2, f: &mut impl FnMut(usize) -> ControlFlow<()>) -> ControlFlow<()> {
        self.visit((q.xs.lo, q.xs.hi), (q.ys.lo, q.ys.hi), f)
    }
}

/// Three-level range tree: a tree on x whose nodes hold 2D range trees on (y, z).
#[derive(Clone, Debug)]
pub struct RangeReport3D {
    pts: Vec<Point3>,
    payload: Vec<usize>,
    tree: KeyTree<Coord, RangeReport2D<Coord>>,
}

impl RangeReport3D {
    pub fn build(points: impl IntoIterator<Item = (Point3, usize)>) -> Self {
        let (pts, payload): (Vec<Point3>, Vec<usize>) = points.into_iter().unzip();
        let items = pts.iter().enumerate().map(|(k, p)| (p.x, k as u32)).collect();
        let tree = KeyTree::build(items, |ids| {
            RangeReport2D::build(ids.iter().map(|&k| {
                let p = pts[k as usize];
                ((p.y, p.z), k as usize)
            }))
        });
        RangeReport3D { pts, payload, tree }
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    pub fn visit(&self, q: &Box3, f: &mut impl FnMut(usize) -> ControlFlow<()>) -> ControlFlow<()> {
        let (yr, zr) = ((q.ys.lo, q.ys.hi), (q.zs.lo, q.zs.hi));
        self.tree.visit(q.xs.lo, q.xs.hi, &mut |hit| match hit {
            Hit::Node(inner) => inner.visit(yr, zr, &mut |k| f(self.payload[k])),
            Hit::Item(k) => {
                let p = self.pts[k as usize];
                if q.ys.contains(p.y) && q.zs.contains(p.z) {
                    f(self.payload[k as usize])?;
                }
                ControlFlow::Continue(())
            }
        })
    }

    pub fn query(&self, q: &Box3) -> Vec<usize> {
        let mut out = Vec::new();
        let _ = self.visit(q, &mut |id| {
            out.push(id);
            ControlFlow::Continue(())
        });
        out
    }

    pub fn any(&self, q: &Box3) -> bool {
        self.visit(q, &mut |_| ControlFlow::Break(())).is_break()
    }

    pub fn storage(&self) -> usize {
        self.pts.len() + self.tree.node_count() + self.tree.assocs().map(RangeReport2D::storage).sum::<usize>()
    }
}
