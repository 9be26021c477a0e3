use std::sync::atomic::{AtomicU32, Ordering};

use portable_atomic::AtomicU128;

use crate::graph::VertexId;

const NO_PARENT: u32 = u32::MAX;

/// Tentative distances and parents, updated by concurrent workers.
///
/// Each vertex keeps `(dist, parent)` in one 128-bit word: the distance bits
/// in the high half, the parent id in the low half. Non-negative IEEE doubles
/// order like their bit patterns, so comparing the high halves compares the
/// distances, and a single compare-exchange moves both fields together.
pub struct SsspState {
    slots: Vec<AtomicU128>,
}

#[inline]
fn pack(dist: f64, parent: u32) -> u128 {
    ((dist.to_bits() as u128) << 64) | parent as u128
}

#[inline]
fn dist_bits(word: u128) -> u64 {
    (word >> 64) as u64
}

impl SsspState {
    /// Every vertex starts unreached: no parent, infinite distance.
    pub fn new(vertex_count: usize) -> Self {
        let slots = (0..vertex_count)
            .map(|_| AtomicU128::new(pack(f64::INFINITY, NO_PARENT)))
            .collect();
        SsspState { slots }
    }

    /// Marks `source` as its own parent at distance zero.
    pub fn init_source(&self, source: VertexId) {
        self.slots[source as usize].store(pack(0.0, source), Ordering::Relaxed);
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    #[inline]
    pub fn dist(&self, v: VertexId) -> f64 {
        f64::from_bits(dist_bits(self.slots[v as usize].load(Ordering::Acquire)))
    }

    #[inline]
    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.entry(v).1
    }

    /// `(dist, parent)` read together.
    #[inline]
    pub fn entry(&self, v: VertexId) -> (f64, Option<VertexId>) {
        let word = self.slots[v as usize].load(Ordering::Acquire);
        let parent = word as u32;
        (
            f64::from_bits(dist_bits(word)),
            (parent != NO_PARENT).then_some(parent),
        )
    }

    /// Lowers `dist[v]` to `new_dist` (with parent `new_parent`) if and only if
    /// the current distance is strictly greater. Returns whether it did.
    #[inline]
    pub fn relax_min(&self, v: VertexId, new_dist: f64, new_parent: VertexId) -> bool {
        debug_assert!(new_dist.is_finite() && new_dist >= 0.0);
        let slot = &self.slots[v as usize];
        let new_bits = new_dist.to_bits();
        let new_word = pack(new_dist, new_parent);
        let mut current = slot.load(Ordering::Acquire);
        loop {
            if dist_bits(current) <= new_bits {
                return false;
            }
            match slot.compare_exchange_weak(current, new_word, Ordering::AcqRel, Ordering::Acquire) {
                Ok(_) => return true,
                Err(actual) => current = actual,
            }
        }
    }

    pub fn distances(&self) -> Vec<f64> {
        (0..self.slots.len() as VertexId).map(|v| self.dist(v)).collect()
    }

    pub fn parents(&self) -> Vec<Option<VertexId>> {
        (0..self.slots.len() as VertexId).map(|v| self.parent(v)).collect()
    }
}

/// Per-round membership flags for frontier deduplication.
///
/// A vertex is in the current round's set when its mark equals the round's
/// epoch, so starting a new round costs nothing.
pub struct FrontierMarks {
    marks: Vec<AtomicU32>,
    epoch: u32,
}

impl FrontierMarks {
    pub fn new(vertex_count: usize) -> Self {
        FrontierMarks {
            marks: (0..vertex_count).map(|_| AtomicU32::new(0)).collect(),
            epoch: 1,
        }
    }

    /// Starts a new, empty set.
    pub fn next_round(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            for m in &self.marks {
                m.store(0, Ordering::Relaxed);
            }
            self.epoch = 1;
        }
    }

    /// Adds `v` to the current set; true only for the caller that added it.
    #[inline]
    pub fn insert(&self, v: VertexId) -> bool {
        self.marks[v as usize].swap(self.epoch, Ordering::AcqRel) != self.epoch
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.marks[v as usize].load(Ordering::Acquire) == self.epoch
    }
}

/// A frontier set with insert-if-absent semantics.
pub struct Frontier {
    marks: FrontierMarks,
    members: Vec<VertexId>,
}

impl Frontier {
    pub fn new(vertex_count: usize) -> Self {
        Frontier {
            marks: FrontierMarks::new(vertex_count),
            members: Vec::new(),
        }
    }

    /// Pushes `v` unless it is already present.
    pub fn insert(&mut self, v: VertexId) {
        if self.marks.insert(v) {
            self.members.push(v);
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.marks.contains(v)
    }

    /// Hands out the members and empties the set.
    pub fn take(&mut self) -> Vec<VertexId> {
        self.marks.next_round();
        std::mem::take(&mut self.members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn initial_entries() {
        let s = SsspState::new(3);
        s.init_source(1);
        assert_eq!(s.entry(1), (0.0, Some(1)));
        assert_eq!(s.entry(0), (f64::INFINITY, None));
    }

    #[test]
    fn relax_min_first_write_and_strictness() {
        let s = SsspState::new(2);
        assert!(s.relax_min(1, 3.0, 0));
        assert_eq!(s.entry(1), (3.0, Some(0)));
        assert!(!s.relax_min(1, 3.0, 1));
        assert_eq!(s.parent(1), Some(0));
        assert!(!s.relax_min(1, 4.0, 1));
        assert!(s.relax_min(1, 2.5, 1));
        assert_eq!(s.entry(1), (2.5, Some(1)));
    }

    #[test]
    fn both_orders_keep_the_minimum() {
        for order in [[2.0, 3.0], [3.0, 2.0]] {
            let s = SsspState::new(1);
            for (i, d) in order.iter().enumerate() {
                s.relax_min(0, *d, i as u32);
            }
            assert_eq!(s.dist(0), 2.0);
            let winner = order.iter().position(|&d| d == 2.0).unwrap() as u32;
            assert_eq!(s.parent(0), Some(winner));
        }
    }

    #[test]
    fn concurrent_relaxations_keep_minimum_and_matching_parent() {
        let s = Arc::new(SsspState::new(1));
        let handles: Vec<_> = (0..8u32)
            .map(|t| {
                let s = Arc::clone(&s);
                std::thread::spawn(move || {
                    for k in (0..2000u32).rev() {
                        // each (dist, parent) pair is unique, so the parent
                        // identifies which write survived
                        let d = (k * 8 + t) as f64 + 1.0;
                        s.relax_min(0, d, k * 8 + t);
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
        let (d, p) = s.entry(0);
        assert_eq!(d, 1.0);
        assert_eq!(p, Some(0));
    }

    #[test]
    fn frontier_insert_is_idempotent() {
        let mut f = Frontier::new(4);
        f.insert(2);
        f.insert(2);
        assert_eq!(f.len(), 1);
        f.insert(3);
        assert!(f.contains(2) && f.contains(3));
        assert_eq!(f.take(), vec![2, 3]);
        assert!(f.is_empty() && !f.contains(2));
        f.insert(2);
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn concurrent_inserts_admit_one_owner() {
        let marks = Arc::new(FrontierMarks::new(1000));
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let marks = Arc::clone(&marks);
                std::thread::spawn(move || (0..1000u32).filter(|&v| marks.insert(v)).count())
            })
            .collect();
        let owned: usize = handles.into_iter().map(|h| h.join().unwrap()).sum();
        assert_eq!(owned, 1000);
        assert!((0..1000).all(|v| marks.contains(v)));
    }
}
