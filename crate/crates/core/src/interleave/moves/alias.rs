use crate::engine::{EngineError, StepOutcome, Transition, TransitionContext, Walker};
use crate::interleave::ring::SlotOutcome;
use crate::interleave::{prefetch, SearchRing, TaskRing};
use crate::sampler::{alias_draw, alias_generate, alias_pick, SamplerKind};

use super::{pending, prefetch_edge, stage_commit, stage_offsets, MoveStrategy, StepEnv};

pub struct AliasMove;

impl MoveStrategy for AliasMove {
    fn kind(&self) -> SamplerKind {
        SamplerKind::Alias
    }

    fn move_one(&self, env: &StepEnv<'_>, walker: &mut Walker, ctx: &TransitionContext) -> Result<StepOutcome, EngineError> {
        let v = walker.cur();
        match env.transition(SamplerKind::Alias, v, ctx) {
            Transition::Alias(slots) => {
                let i = alias_generate(slots, walker.rng());
                Ok(StepOutcome::Moved(env.graph.edge(v, env.graph.edge_range(v).start + i)))
            }
            _ => Ok(StepOutcome::DeadEnd),
        }
    }

    fn move_group(&self, env: &StepEnv<'_>, ring: &mut TaskRing, _: &mut SearchRing) -> Result<(), EngineError> {
        stage_offsets(env, ring);
        for s in pending(ring) {
            let v = s.staged.v;
            match env.transition(SamplerKind::Alias, v, &s.ctx) {
                Transition::Alias(slots) => {
                    let (x, y) = alias_draw(slots.len(), s.walker.rng());
                    s.staged.start = env.graph.edge_range(v).start;
                    s.staged.x = x;
                    s.staged.y = y;
                    prefetch(env.prefetch, &slots[x]);
                }
                _ => s.outcome = SlotOutcome::DeadEnd,
            }
        }
        for s in pending(ring) {
            if let Transition::Alias(slots) = env.transition(SamplerKind::Alias, s.staged.v, &s.ctx) {
                s.staged.x = alias_pick(&slots[s.staged.x], s.staged.y);
                prefetch_edge(env, s.staged.start + s.staged.x);
            }
        }
        stage_commit(env, ring);
        Ok(())
    }
}
