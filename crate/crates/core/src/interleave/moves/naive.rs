use crate::engine::{EngineError, StepOutcome, TransitionContext, Walker};
use crate::sampler::{naive_generate, SamplerKind};

use super::{load_range, pending, prefetch_edge, sampler_error, stage_commit, stage_offsets, MoveStrategy, StepEnv};
use crate::interleave::{SearchRing, TaskRing};

pub struct NaiveMove;

impl MoveStrategy for NaiveMove {
    fn kind(&self) -> SamplerKind {
        SamplerKind::Naive
    }

    fn move_one(&self, env: &StepEnv<'_>, walker: &mut Walker, _: &TransitionContext) -> Result<StepOutcome, EngineError> {
        let v = walker.cur();
        let range = env.graph.edge_range(v);
        if range.is_empty() {
            return Ok(StepOutcome::DeadEnd);
        }
        let x = naive_generate(range.len(), walker.rng()).map_err(|e| sampler_error(walker, e))?;
        Ok(StepOutcome::Moved(env.graph.edge(v, range.start + x)))
    }

    fn move_group(&self, env: &StepEnv<'_>, ring: &mut TaskRing, _: &mut SearchRing) -> Result<(), EngineError> {
        stage_offsets(env, ring);
        for s in pending(ring) {
            if load_range(env, s) {
                s.staged.x = s.walker.rng().index(s.staged.d);
                prefetch_edge(env, s.staged.start + s.staged.x);
            }
        }
        stage_commit(env, ring);
        Ok(())
    }
}
