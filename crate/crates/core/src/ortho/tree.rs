//! Generic static search trees that the reporting structures are built from.
//!
//! Every visitor returns [`ControlFlow`] so callers can stop as soon as they
//! have seen enough, which is how the emptiness tests are answered.

use std::ops::ControlFlow;

use crate::geom::{Coord, Interval};

/// Items per leaf bucket. Leaves are scanned item by item.
pub(crate) const LEAF: usize = 8;

const NONE: u32 = u32::MAX;

/// What a [`KeyTree`] range visit hands back: a canonical node's associated
/// structure, or a single item from a partially covered leaf bucket.
pub enum Hit<'a, A> {
    Node(&'a A),
    Item(u32),
}

/// A balanced tree over items sorted by a one-dimensional key. Every internal
/// node carries an associated structure built from the items below it.
#[derive(Clone, Debug)]
pub struct KeyTree<K, A> {
    keys: Vec<K>,
    ids: Vec<u32>,
    nodes: Vec<KeyNode<A>>,
}

#[derive(Clone, Debug)]
struct KeyNode<A> {
    lo: u32,
    hi: u32,
    left: u32,
    right: u32,
    assoc: Option<A>,
}

impl<K: Copy + Ord, A> KeyTree<K, A> {
    /// `make` receives the ids of a node's subtree, in key order.
    pub fn build(mut items: Vec<(K, u32)>, mut make: impl FnMut(&[u32]) -> A) -> Self {
        items.sort_unstable();
        let keys = items.iter().map(|&(k, _)| k).collect();
        let ids: Vec<u32> = items.iter().map(|&(_, id)| id).collect();
        let mut tree = KeyTree {
            keys,
            ids,
            nodes: Vec::new(),
        };
        if !tree.ids.is_empty() {
            tree.build_node(0, tree.ids.len(), &mut make);
        }
        tree
    }

    fn build_node(&mut self, lo: usize, hi: usize, make: &mut impl FnMut(&[u32]) -> A) -> u32 {
        let idx = self.nodes.len() as u32;
        self.nodes.push(KeyNode {
            lo: lo as u32,
            hi: hi as u32,
            left: NONE,
            right: NONE,
            assoc: None,
        });
        if hi - lo > LEAF {
            let mid = (lo + hi) / 2;
            let left = self.build_node(lo, mid, make);
            let right = self.build_node(mid, hi, make);
            let assoc = make(&self.ids[lo..hi]);
            let node = &mut self.nodes[idx as usize];
            node.left = left;
            node.right = right;
            node.assoc = Some(assoc);
        }
        idx
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn assocs(&self) -> impl Iterator<Item = &A> {
        self.nodes.iter().filter_map(|n| n.assoc.as_ref())
    }

    /// Visit the canonical decomposition of the items with key in `[lo, hi]`.
    /// Fully covered internal nodes go to `on_node`; items of partially or
    /// fully covered leaves go to `on_item` one by one.
    pub fn visit(&self, lo: K, hi: K, f: &mut impl FnMut(Hit<'_, A>) -> ControlFlow<()>) -> ControlFlow<()> {
        if self.ids.is_empty() || lo > hi {
            return ControlFlow::Continue(());
        }
        let i0 = self.keys.partition_point(|k| *k < lo) as u32;
        let i1 = self.keys.partition_point(|k| *k <= hi) as u32;
        if i0 >= i1 {
            return ControlFlow::Continue(());
        }
        self.visit_node(0, i0, i1, f)
    }

    fn visit_node(
        &self,
        idx: u32,
        i0: u32,
        i1: u32,
        f: &mut impl FnMut(Hit<'_, A>) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let node = &self.nodes[idx as usize];
        if node.hi <= i0 || i1 <= node.lo {
            return ControlFlow::Continue(());
        }
        match &node.assoc {
            None => {
                for k in node.lo.max(i0)..node.hi.min(i1) {
                    f(Hit::Item(self.ids[k as usize]))?;
                }
                ControlFlow::Continue(())
            }
            Some(assoc) if i0 <= node.lo && node.hi <= i1 => f(Hit::Node(assoc)),
            Some(_) => {
                self.visit_node(node.left, i0, i1, f)?;
                self.visit_node(node.right, i0, i1, f)
            }
        }
    }
}

/// Segment tree over closed integer intervals with an associated structure
/// per canonical node. Stabbing with a point visits every node on the
/// root-to-leaf path that stores intervals.
#[derive(Clone, Debug)]
pub struct SegmentTree<A> {
    keys: Vec<Coord>,
    /// Number of elementary pieces: `{k0}, (k0,k1), {k1}, ...`.
    pieces: usize,
    /// Heap-ordered slots pointing into `assocs`.
    slots: Vec<u32>,
    assocs: Vec<A>,
    stored: usize,
}

impl<A> SegmentTree<A> {
    pub fn build(items: &[(Interval, u32)], mut make: impl FnMut(&[u32]) -> A) -> Self {
        let mut keys: Vec<Coord> = items.iter().flat_map(|(iv, _)| [iv.lo, iv.hi]).collect();
        keys.sort_unstable();
        keys.dedup();
        let pieces = if keys.is_empty() { 0 } else { 2 * keys.len() - 1 };
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); if pieces == 0 { 0 } else { 4 * pieces }];
        let mut stored = 0;
        for &(iv, id) in items {
            let a = 2 * keys.binary_search(&iv.lo).unwrap();
            let b = 2 * keys.binary_search(&iv.hi).unwrap();
            stored += insert(&mut lists, 1, 0, pieces - 1, a, b, id);
        }
        let mut slots = vec![NONE; lists.len()];
        let mut assocs = Vec::new();
        for (slot, list) in slots.iter_mut().zip(&lists) {
            if !list.is_empty() {
                *slot = assocs.len() as u32;
                assocs.push(make(list));
            }
        }
        SegmentTree {
            keys,
            pieces,
            slots,
            assocs,
            stored,
        }
    }

    fn piece_of(&self, p: Coord) -> Option<usize> {
        let k = self.keys.partition_point(|&x| x < p);
        if k < self.keys.len() && self.keys[k] == p {
            Some(2 * k)
        } else if k == 0 || k == self.keys.len() {
            None
        } else {
            Some(2 * k - 1)
        }
    }

    pub fn stab(&self, p: Coord, on_node: &mut impl FnMut(&A) -> ControlFlow<()>) -> ControlFlow<()> {
        let Some(piece) = self.piece_of(p) else {
            return ControlFlow::Continue(());
        };
        let (mut node, mut lo, mut hi) = (1usize, 0usize, self.pieces - 1);
        loop {
            let slot = self.slots[node];
            if slot != NONE {
                on_node(&self.assocs[slot as usize])?;
            }
            if lo == hi {
                return ControlFlow::Continue(());
            }
            let mid = (lo + hi) / 2;
            if piece <= mid {
                node *= 2;
                hi = mid;
            } else {
                node = 2 * node + 1;
                lo = mid + 1;
            }
        }
    }

    pub fn assocs(&self) -> &[A] {
        &self.assocs
    }

    /// Total number of (interval, node) incidences.
    pub fn stored(&self) -> usize {
        self.stored
    }
}

fn insert(lists: &mut [Vec<u32>], node: usize, lo: usize, hi: usize, a: usize, b: usize, id: u32) -> usize {
    if b < lo || hi < a {
        return 0;
    }
    if a <= lo && hi <= b {
        lists[node].push(id);
        return 1;
    }
    let mid = (lo + hi) / 2;
    insert(lists, 2 * node, lo, mid, a, b, id) + insert(lists, 2 * node + 1, mid + 1, hi, a, b, id)
}

/// Centered interval tree answering "which intervals contain `p`".
#[derive(Clone, Debug, Default)]
pub struct IntervalTree {
    nodes: Vec<ItNode>,
    by_lo: Vec<(Coord, u32)>,
    by_hi: Vec<(Coord, u32)>,
}

#[derive(Clone, Debug)]
struct ItNode {
    center: Coord,
    start: u32,
    end: u32,
    left: u32,
    right: u32,
}

impl IntervalTree {
    pub fn build(items: Vec<(Interval, u32)>) -> Self {
        let mut tree = IntervalTree::default();
        if !items.is_empty() {
            tree.build_node(items);
        }
        tree
    }

    fn build_node(&mut self, items: Vec<(Interval, u32)>) -> u32 {
        let mut ends: Vec<Coord> = items.iter().flat_map(|(iv, _)| [iv.lo, iv.hi]).collect();
        let mid = ends.len() / 2;
        let center = *ends.select_nth_unstable(mid).1;
        let (mut here, mut left, mut right) = (Vec::new(), Vec::new(), Vec::new());
        for it in items {
            if it.0.hi < center {
                left.push(it);
            } else if it.0.lo > center {
                right.push(it);
            } else {
                here.push(it);
            }
        }
        let start = self.by_lo.len() as u32;
        let mut lo_sorted: Vec<_> = here.iter().map(|(iv, id)| (iv.lo, *id)).collect();
        lo_sorted.sort_unstable();
        let mut hi_sorted: Vec<_> = here.iter().map(|(iv, id)| (iv.hi, *id)).collect();
        hi_sorted.sort_unstable_by(|a, b| b.cmp(a));
        self.by_lo.extend(lo_sorted);
        self.by_hi.extend(hi_sorted);
        let end = self.by_lo.len() as u32;
        let idx = self.nodes.len() as u32;
        self.nodes.push(ItNode {
            center,
            start,
            end,
            left: NONE,
            right: NONE,
        });
        if !left.is_empty() {
            let l = self.build_node(left);
            self.nodes[idx as usize].left = l;
        }
        if !right.is_empty() {
            let r = self.build_node(right);
            self.nodes[idx as usize].right = r;
        }
        idx
    }

    pub fn len(&self) -> usize {
        self.by_lo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_lo.is_empty()
    }

    pub fn stab(&self, p: Coord, f: &mut impl FnMut(u32) -> ControlFlow<()>) -> ControlFlow<()> {
        let mut idx = if self.nodes.is_empty() { NONE } else { 0 };
        while idx != NONE {
            let node = &self.nodes[idx as usize];
            let range = node.start as usize..node.end as usize;
            if p < node.center {
                for &(lo, id) in &self.by_lo[range] {
                    if lo > p {
                        break;
                    }
                    f(id)?;
                }
                idx = node.left;
            } else if p > node.center {
                for &(hi, id) in &self.by_hi[range] {
                    if hi < p {
                        break;
                    }
                    f(id)?;
                }
                idx = node.right;
            } else {
                for &(_, id) in &self.by_lo[range] {
                    f(id)?;
                }
                break;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Priority search tree over `(lo, hi)` pairs answering the two-sided query
/// `lo <= lo_max && hi >= hi_min` in `O(log n + k)`.
#[derive(Clone, Debug, Default)]
pub struct Pst {
    nodes: Vec<PstNode>,
}

#[derive(Clone, Debug)]
struct PstNode {
    lo: Coord,
    hi: Coord,
    id: u32,
    /// Smallest `lo` in the right subtree.
    split: Coord,
    left: u32,
    right: u32,
}

impl Pst {
    pub fn build(mut items: Vec<(Coord, Coord, u32)>) -> Self {
        items.sort_unstable();
        let mut pst = Pst {
            nodes: Vec::with_capacity(items.len()),
        };
        if !items.is_empty() {
            pst.build_node(&mut items);
        }
        pst
    }

    fn build_node(&mut self, items: &mut [(Coord, Coord, u32)]) -> u32 {
        // Move the max-hi item to the front and keep the rest sorted by lo.
        let top = (0..items.len()).max_by_key(|&k| (items[k].1, std::cmp::Reverse(k))).unwrap();
        items[..=top].rotate_right(1);
        let (lo, hi, id) = items[0];
        let rest = &mut items[1..];
        let idx = self.nodes.len() as u32;
        let mid = rest.len() / 2;
        self.nodes.push(PstNode {
            lo,
            hi,
            id,
            split: rest.get(mid).map_or(Coord::MAX, |t| t.0),
            left: NONE,
            right: NONE,
        });
        let (l, r) = rest.split_at_mut(mid);
        if !l.is_empty() {
            let c = self.build_node(l);
            self.nodes[idx as usize].left = c;
        }
        if !r.is_empty() {
            let c = self.build_node(r);
            self.nodes[idx as usize].right = c;
        }
        idx
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn query(
        &self,
        lo_max: Coord,
        hi_min: Coord,
        f: &mut impl FnMut(u32) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if self.nodes.is_empty() {
            return ControlFlow::Continue(());
        }
        self.query_node(0, lo_max, hi_min, f)
    }

    fn query_node(
        &self,
        idx: u32,
        lo_max: Coord,
        hi_min: Coord,
        f: &mut impl FnMut(u32) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let node = &self.nodes[idx as usize];
        if node.hi < hi_min {
            return ControlFlow::Continue(());
        }
        if node.lo <= lo_max {
            f(node.id)?;
        }
        if node.left != NONE {
            self.query_node(node.left, lo_max, hi_min, f)?;
        }
        if node.right != NONE && node.split <= lo_max {
            self.query_node(node.right, lo_max, hi_min, f)?;
        }
        ControlFlow::Continue(())
    }
}
