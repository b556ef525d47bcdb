use crate::engine::{EngineError, StepOutcome, Transition, TransitionContext, Walker};
use crate::interleave::ring::{SlotOutcome, TaskSlot};
use crate::interleave::{prefetch, SearchRing, TaskRing};
use crate::sampler::{its_draw, its_generate, SamplerKind};

use super::{pending, prefetch_edge, stage_commit, stage_offsets, MoveStrategy, StepEnv};

pub struct ItsMove;

fn cumulative<'s>(env: &'s StepEnv<'_>, s: &'s TaskSlot) -> &'s [f64] {
    match env.transition(SamplerKind::Its, s.staged.v, &s.ctx) {
        Transition::Its(c) => c,
        other => unreachable!("ITS slot without cumulative table: {other:?}"),
    }
}

impl MoveStrategy for ItsMove {
    fn kind(&self) -> SamplerKind {
        SamplerKind::Its
    }

    fn move_one(&self, env: &StepEnv<'_>, walker: &mut Walker, ctx: &TransitionContext) -> Result<StepOutcome, EngineError> {
        let v = walker.cur();
        match env.transition(SamplerKind::Its, v, ctx) {
            Transition::Its(c) => {
                let i = its_generate(c, walker.rng());
                Ok(StepOutcome::Moved(env.graph.edge(v, env.graph.edge_range(v).start + i)))
            }
            _ => Ok(StepOutcome::DeadEnd),
        }
    }

    fn move_group(&self, env: &StepEnv<'_>, ring: &mut TaskRing, search: &mut SearchRing) -> Result<(), EngineError> {
        stage_offsets(env, ring);
        for s in pending(ring) {
            let v = s.staged.v;
            match env.transition(SamplerKind::Its, v, &s.ctx) {
                Transition::Its(c) => {
                    s.staged.start = env.graph.edge_range(v).start;
                    s.staged.d = c.len();
                    prefetch(env.prefetch, &c[c.len() - 1]);
                }
                _ => s.outcome = SlotOutcome::DeadEnd,
            }
        }
        for s in pending(ring) {
            let total = cumulative(env, s)[s.staged.d - 1];
            let st = &mut s.staged;
            st.y = its_draw(total, s.walker.rng());
            st.lo = 0;
            st.hi = st.d - 1;
            if st.lo == st.hi {
                st.x = 0;
                prefetch_edge(env, st.start);
            } else {
                st.in_cycle = true;
            }
        }
        search.drive(
            ring.slots_mut(),
            |s| {
                let st = &mut s.staged;
                st.x = st.lo + (st.hi - st.lo) / 2;
                prefetch(env.prefetch, &cumulative(env, s)[s.staged.x]);
                Ok(false)
            },
            |s| {
                let below = s.staged.y < cumulative(env, s)[s.staged.x];
                let st = &mut s.staged;
                if below {
                    st.hi = st.x;
                } else {
                    st.lo = st.x + 1;
                }
                if st.lo < st.hi {
                    st.x = st.lo + (st.hi - st.lo) / 2;
                    prefetch(env.prefetch, &cumulative(env, s)[s.staged.x]);
                    Ok(false)
                } else {
                    st.x = st.lo;
                    prefetch_edge(env, st.start + st.x);
                    Ok(true)
                }
            },
        )?;
        stage_commit(env, ring);
        Ok(())
    }
}
