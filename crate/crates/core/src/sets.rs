use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::geom::{ObjectId, PairId};

/// An immutable, indexed collection of objects of one class. The index of an
/// object is its identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObjectSet<T> {
    items: Vec<T>,
}

impl<T> ObjectSet<T> {
    pub fn new(items: Vec<T>) -> Self {
        ObjectSet { items }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, id: ObjectId) -> Option<&T> {
        self.items.get(id)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.items.iter()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.items
    }
}

impl<T> Index<ObjectId> for ObjectSet<T> {
    type Output = T;

    fn index(&self, id: ObjectId) -> &T {
        &self.items[id]
    }
}

impl<T> From<Vec<T>> for ObjectSet<T> {
    fn from(items: Vec<T>) -> Self {
        ObjectSet::new(items)
    }
}

/// Deduplicated, sorted set of object ids produced by the first query step.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeedSet {
    ids: Vec<ObjectId>,
}

impl SeedSet {
    pub fn from_ids(mut ids: Vec<ObjectId>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        SeedSet { ids }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: ObjectId) -> bool {
        self.ids.binary_search(&id).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = ObjectId> + '_ {
        self.ids.iter().copied()
    }

    pub fn as_slice(&self) -> &[ObjectId] {
        &self.ids
    }
}

/// Deduplicated set of intersecting pairs, sorted lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pairs: Vec<PairId>,
}

impl PairReport {
    pub fn from_pairs(mut pairs: Vec<PairId>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        PairReport { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, p: PairId) -> bool {
        self.pairs.binary_search(&p).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = PairId> + '_ {
        self.pairs.iter().copied()
    }

    pub fn as_slice(&self) -> &[PairId] {
        &self.pairs
    }

    /// Pairs as `[i, j]` arrays, the shape used in output files.
    pub fn to_arrays(&self) -> Vec<[ObjectId; 2]> {
        self.pairs.iter().map(|p| [p.i(), p.j()]).collect()
    }
}

impl FromIterator<PairId> for PairReport {
    fn from_iter<I: IntoIterator<Item = PairId>>(iter: I) -> Self {
        PairReport::from_pairs(iter.into_iter().collect())
    }
}
