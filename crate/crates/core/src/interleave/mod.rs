//! Step interleaving.
//!
//! Move is split into stages so that each stage issues a prefetch for the
//! data the next stage reads. A worker keeps up to `k` walkers in a task ring
//! and runs one stage for all of them before moving to the next stage, so
//! the prefetches of one walker overlap the computation of the others.
//! Loops inside Move (rejection retries, binary-search probes) run through a
//! search ring of `k'` slots.
//!
//! Interleaving never changes results: every walker draws from its own
//! random stream in the same order as the plain single-walker move.

mod moves;
mod plan;
mod prefetch;
mod ring;
mod tune;

pub use moves::{strategies, strategy, strategy_for, AliasMove, ItsMove, MoveStrategy, NaiveMove, ORejMove, RejMove, StepEnv};
pub use plan::{plan_for, Stage, StageKind, StagePlan};
pub use prefetch::{prefetch, PrefetchLevel};
pub use ring::{RingConfig, RingStats, SearchRing, SlotOutcome, Staged, TaskRing, TaskSlot};
pub use tune::{tune_ring_sizes, TuneOptions, TuneReport, TuneRow};
