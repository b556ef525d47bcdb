//! Move implementations, one per sampling method, selectable by name.
//!
//! Every strategy offers a plain single-walker move and a stage-interleaved
//! group move. Both consume each walker's random stream in the same order, so
//! they select the same edges.

mod alias;
mod its;
mod naive;
mod rej;

pub use alias::AliasMove;
pub use its::ItsMove;
pub use naive::NaiveMove;
pub use rej::{ORejMove, RejMove};

use crate::engine::{EngineError, StaticTable, StepOutcome, Transition, TransitionContext, WalkProgram, Walker};
use crate::graph::{Graph, VertexId};
use crate::sampler::{SamplerError, SamplerKind};

use super::ring::{SearchRing, SlotOutcome, TaskRing, TaskSlot};
use super::{plan_for, prefetch, PrefetchLevel, StagePlan};

/// Shared, read-only inputs of a move.
#[derive(Clone, Copy)]
pub struct StepEnv<'a> {
    pub graph: &'a Graph,
    pub program: &'a dyn WalkProgram,
    /// Preprocessed tables, present for the static flow.
    pub table: Option<&'a StaticTable>,
    /// O-REJ envelope.
    pub max_weight: f64,
    pub prefetch: PrefetchLevel,
}

impl<'a> StepEnv<'a> {
    /// What `kind` samples from at `v`. `ctx` is consulted only when there
    /// is no preprocessed table.
    pub fn transition<'s>(&'s self, kind: SamplerKind, v: VertexId, ctx: &'s TransitionContext) -> Transition<'s> {
        if self.graph.edge_range(v).is_empty() {
            return Transition::DeadEnd;
        }
        match kind {
            SamplerKind::Naive => Transition::Uniform,
            SamplerKind::ORej => Transition::OnDemand { p_star: self.max_weight },
            _ => match self.table {
                Some(t) => t.view(self.graph, v),
                None => ctx.view(),
            },
        }
    }
}

pub trait MoveStrategy: Send + Sync {
    fn kind(&self) -> SamplerKind;

    fn name(&self) -> &'static str {
        self.kind().name()
    }

    fn plan(&self) -> &'static StagePlan {
        plan_for(self.kind())
    }

    /// Selects the next edge of one walker without extending its path.
    fn move_one(&self, env: &StepEnv<'_>, walker: &mut Walker, ctx: &TransitionContext)
        -> Result<StepOutcome, EngineError>;

    /// Selects the next edge of every pending ring member, leaving the result
    /// in each slot's outcome.
    fn move_group(&self, env: &StepEnv<'_>, ring: &mut TaskRing, search: &mut SearchRing) -> Result<(), EngineError>;
}

static REGISTRY: [&dyn MoveStrategy; 5] = [&NaiveMove, &ItsMove, &AliasMove, &RejMove, &ORejMove];

/// Every registered strategy.
pub fn strategies() -> &'static [&'static dyn MoveStrategy] {
    &REGISTRY
}

/// Looks a strategy up by sampler name (`naive`, `its`, `alias`, `rej`,
/// `o-rej`).
pub fn strategy(name: &str) -> Option<&'static dyn MoveStrategy> {
    let kind = name.parse::<SamplerKind>().ok()?;
    Some(strategy_for(kind))
}

pub fn strategy_for(kind: SamplerKind) -> &'static dyn MoveStrategy {
    REGISTRY.iter().copied().find(|s| s.kind() == kind).expect("every sampler kind is registered")
}

pub(crate) fn sampler_error(walker: &Walker, source: SamplerError) -> EngineError {
    EngineError::Sampler { query: walker.id(), source }
}

fn pending(ring: &mut TaskRing) -> impl Iterator<Item = &mut TaskSlot> {
    ring.slots_mut().iter_mut().filter(|s| s.is_pending())
}

/// First stage of every plan: record the current vertex and prefetch its
/// offsets.
fn stage_offsets(env: &StepEnv<'_>, ring: &mut TaskRing) {
    let offsets = env.graph.offsets();
    for s in pending(ring) {
        let v = s.walker.cur();
        s.staged.v = v;
        s.staged.in_cycle = false;
        prefetch(env.prefetch, &offsets[v as usize]);
    }
}

/// Reads the degree recorded by the offsets; marks zero-degree walkers dead.
fn load_range(env: &StepEnv<'_>, s: &mut TaskSlot) -> bool {
    let r = env.graph.edge_range(s.staged.v);
    s.staged.start = r.start;
    s.staged.d = r.len();
    if r.is_empty() {
        s.outcome = SlotOutcome::DeadEnd;
        return false;
    }
    true
}

/// Last stage of every plan: read the chosen neighbor.
fn stage_commit(env: &StepEnv<'_>, ring: &mut TaskRing) {
    for s in pending(ring) {
        let st = &s.staged;
        s.outcome = SlotOutcome::Moved(env.graph.edge(st.v, st.start + st.x));
    }
}

#[inline]
fn prefetch_edge(env: &StepEnv<'_>, index: usize) {
    prefetch(env.prefetch, &env.graph.neighbors()[index]);
}
