//! Per-worker slot arrays for in-flight walkers.
//!
//! The task ring carries every group member's staged values across the
//! stages of one move. The search ring holds the members currently inside a
//! cycle stage (a rejection loop or a binary search) and visits its slots in
//! turn, submitting a new member whenever a slot frees up.

use crate::engine::{EngineError, TransitionContext, Walker};
use crate::graph::{Edge, VertexId};
use crate::sampler::SamplerKind;

use super::PrefetchLevel;

/// Ring sizes and prefetch hint level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingConfig {
    /// Walkers in flight per worker.
    pub k: usize,
    /// Search ring capacity, at most `k`.
    pub k_prime: usize,
    pub prefetch: PrefetchLevel,
}

impl Default for RingConfig {
    fn default() -> Self {
        Self { k: 64, k_prime: 32, prefetch: PrefetchLevel::L1 }
    }
}

impl RingConfig {
    pub fn new(k: usize, k_prime: usize) -> Self {
        Self { k, k_prime, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        if self.k == 0 {
            return Err(EngineError::Config("ring size k must be at least 1".into()));
        }
        if self.k_prime == 0 || self.k_prime > self.k {
            return Err(EngineError::Config(format!(
                "search ring size k' = {} must lie in 1..={}",
                self.k_prime, self.k
            )));
        }
        Ok(())
    }
}

/// Highest occupancy observed, per worker and merged across workers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RingStats {
    pub max_task_ring: usize,
    pub max_search_ring: usize,
}

impl RingStats {
    pub fn merge(&mut self, other: RingStats) {
        self.max_task_ring = self.max_task_ring.max(other.max_task_ring);
        self.max_search_ring = self.max_search_ring.max(other.max_search_ring);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotOutcome {
    Pending,
    Moved(Edge),
    DeadEnd,
}

/// Scalars carried between stages.
#[derive(Clone, Copy, Debug, Default)]
pub struct Staged {
    pub v: VertexId,
    pub start: usize,
    pub d: usize,
    pub x: usize,
    pub y: f64,
    /// `p*` for rejection, the running total for ITS.
    pub bound: f64,
    pub lo: usize,
    pub hi: usize,
    pub trials: u32,
    /// Cycle stage to run on the next search-ring visit.
    pub stage: u8,
    pub in_cycle: bool,
}

#[derive(Debug)]
pub struct TaskSlot {
    pub walker: Walker,
    pub ctx: TransitionContext,
    pub outcome: SlotOutcome,
    pub staged: Staged,
}

impl TaskSlot {
    pub fn new(walker: Walker, kind: SamplerKind) -> Self {
        Self { walker, ctx: TransitionContext::new(kind), outcome: SlotOutcome::Pending, staged: Staged::default() }
    }

    #[inline]
    pub fn is_pending(&self) -> bool {
        self.outcome == SlotOutcome::Pending
    }
}

/// Up to `k` walkers in flight on one worker.
#[derive(Debug)]
pub struct TaskRing {
    slots: Vec<TaskSlot>,
    capacity: usize,
    max_len: usize,
}

impl TaskRing {
    pub fn new(capacity: usize) -> Self {
        Self { slots: Vec::with_capacity(capacity), capacity, max_len: 0 }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.slots.len() >= self.capacity
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Adds a walker. Panics when the ring is full.
    pub fn push(&mut self, slot: TaskSlot) {
        assert!(!self.is_full(), "task ring over capacity");
        self.slots.push(slot);
        self.max_len = self.max_len.max(self.slots.len());
    }

    pub fn swap_remove(&mut self, i: usize) -> TaskSlot {
        self.slots.swap_remove(i)
    }

    /// Puts a fresh walker into slot `i`, keeping its buffers.
    pub fn replace(&mut self, i: usize, walker: Walker) -> Walker {
        let slot = &mut self.slots[i];
        slot.outcome = SlotOutcome::Pending;
        std::mem::replace(&mut slot.walker, walker)
    }

    pub fn slots(&self) -> &[TaskSlot] {
        &self.slots
    }

    pub fn slots_mut(&mut self) -> &mut [TaskSlot] {
        &mut self.slots
    }

    /// Marks every member as awaiting its next move.
    pub fn begin_round(&mut self) {
        for s in &mut self.slots {
            s.outcome = SlotOutcome::Pending;
        }
    }
}

/// Drives cycle stages for the task-ring members that entered a cycle.
#[derive(Debug)]
pub struct SearchRing {
    occupied: Vec<Option<u32>>,
    tasks: Vec<u32>,
    max_len: usize,
}

impl SearchRing {
    pub fn new(capacity: usize) -> Self {
        Self { occupied: vec![None; capacity.max(1)], tasks: Vec::new(), max_len: 0 }
    }

    pub fn capacity(&self) -> usize {
        self.occupied.len()
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Runs every slot with `staged.in_cycle` set until it leaves the cycle.
    ///
    /// `enter` executes the first cycle stage of a newly submitted member and
    /// `advance` the next stage of an occupied slot; both return `true` once
    /// the member has left the cycle.
    pub fn drive(
        &mut self,
        slots: &mut [TaskSlot],
        mut enter: impl FnMut(&mut TaskSlot) -> Result<bool, EngineError>,
        mut advance: impl FnMut(&mut TaskSlot) -> Result<bool, EngineError>,
    ) -> Result<(), EngineError> {
        self.tasks.clear();
        self.tasks.extend(
            slots.iter().enumerate().filter(|(_, s)| s.is_pending() && s.staged.in_cycle).map(|(i, _)| i as u32),
        );
        let n = self.tasks.len();
        let (mut submitted, mut completed, mut active) = (0, 0, 0);
        self.occupied.fill(None);
        while completed < n {
            for j in 0..self.occupied.len() {
                match self.occupied[j] {
                    None => {
                        if submitted == n {
                            continue;
                        }
                        let t = self.tasks[submitted];
                        submitted += 1;
                        if enter(&mut slots[t as usize])? {
                            completed += 1;
                        } else {
                            self.occupied[j] = Some(t);
                            active += 1;
                            self.max_len = self.max_len.max(active);
                        }
                    }
                    Some(t) => {
                        if advance(&mut slots[t as usize])? {
                            completed += 1;
                            self.occupied[j] = None;
                            active -= 1;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
