use crate::engine::{EngineError, StepOutcome, Transition, TransitionContext, Walker};
use crate::graph::{Edge, VertexId};
use crate::interleave::ring::{SlotOutcome, TaskSlot};
use crate::interleave::{prefetch, SearchRing, TaskRing};
use crate::sampler::{rej_dart, rej_generate, SamplerError, SamplerKind, TRIAL_CAP};

use super::{load_range, pending, prefetch_edge, sampler_error, stage_commit, stage_offsets, MoveStrategy, StepEnv};

const DART: u8 = 2;
const CHECK: u8 = 3;

/// Trial counts at which O-REJ checks for a distribution without mass.
const MASS_PROBE_FROM: u32 = 64;

pub struct RejMove;

pub struct ORejMove;

fn rej_view<'s>(env: &'s StepEnv<'_>, s: &'s TaskSlot) -> (&'s [f64], f64) {
    match env.transition(SamplerKind::Rej, s.staged.v, &s.ctx) {
        Transition::Rej { weights, p_star } => (weights, p_star),
        other => unreachable!("REJ slot without weights: {other:?}"),
    }
}

impl MoveStrategy for RejMove {
    fn kind(&self) -> SamplerKind {
        SamplerKind::Rej
    }

    fn move_one(&self, env: &StepEnv<'_>, walker: &mut Walker, ctx: &TransitionContext) -> Result<StepOutcome, EngineError> {
        let v = walker.cur();
        match env.transition(SamplerKind::Rej, v, ctx) {
            Transition::Rej { weights, p_star } => {
                let (i, _) = rej_generate(|i| weights[i], weights.len(), p_star, walker.rng())
                    .map_err(|e| sampler_error(walker, e))?;
                Ok(StepOutcome::Moved(env.graph.edge(v, env.graph.edge_range(v).start + i)))
            }
            _ => Ok(StepOutcome::DeadEnd),
        }
    }

    fn move_group(&self, env: &StepEnv<'_>, ring: &mut TaskRing, search: &mut SearchRing) -> Result<(), EngineError> {
        stage_offsets(env, ring);
        for s in pending(ring) {
            if load_range(env, s) {
                if let Some(t) = env.table {
                    prefetch(env.prefetch, &t.p_star[s.staged.v as usize]);
                }
                s.staged.trials = 0;
                s.staged.stage = DART;
                s.staged.in_cycle = true;
            }
        }
        let dart = |s: &mut TaskSlot| {
            let (weights, p_star) = match env.transition(SamplerKind::Rej, s.staged.v, &s.ctx) {
                Transition::Rej { weights, p_star } => (weights, p_star),
                _ => {
                    s.outcome = SlotOutcome::DeadEnd;
                    return true;
                }
            };
            let (x, y) = rej_dart(weights.len(), p_star, s.walker.rng());
            prefetch(env.prefetch, &weights[x]);
            let st = &mut s.staged;
            st.trials += 1;
            st.x = x;
            st.y = y;
            st.stage = CHECK;
            false
        };
        search.drive(ring.slots_mut(), |s| Ok(dart(s)), |s| {
            if s.staged.stage == DART {
                return Ok(dart(s));
            }
            let (weights, _) = rej_view(env, s);
            if s.staged.y < weights[s.staged.x] {
                prefetch_edge(env, s.staged.start + s.staged.x);
                return Ok(true);
            }
            if s.staged.trials >= TRIAL_CAP {
                let trials = s.staged.trials;
                return Err(sampler_error(&s.walker, SamplerError::TrialCapExceeded { trials }));
            }
            s.staged.stage = DART;
            Ok(false)
        })?;
        stage_commit(env, ring);
        Ok(())
    }
}

enum Trial {
    Accept,
    Reject,
    DeadEnd,
}

fn checked_weight(env: &StepEnv<'_>, walker: &Walker, edge: Edge) -> Result<f64, EngineError> {
    let w = env.program.weight(env.graph, Some(walker), edge);
    if !(w.is_finite() && w >= 0.0) {
        return Err(EngineError::InvalidWeight { edge: edge.index, weight: w });
    }
    if w > env.max_weight * (1.0 + 1e-12) {
        return Err(EngineError::MaxWeightViolated { edge: edge.index, weight: w, max_weight: env.max_weight });
    }
    Ok(w)
}

/// Judges dart `(x, y)` of an O-REJ walk. After 64 trials and at every
/// further power of two the whole distribution is scanned once, so a vertex
/// whose weights are all zero ends the walk instead of spinning to the cap.
#[allow(clippy::too_many_arguments)]
fn orej_check(
    env: &StepEnv<'_>,
    walker: &Walker,
    v: VertexId,
    start: usize,
    d: usize,
    x: usize,
    y: f64,
    trials: u32,
) -> Result<Trial, EngineError> {
    let w = checked_weight(env, walker, env.graph.edge(v, start + x))?;
    if y < w {
        return Ok(Trial::Accept);
    }
    if trials >= TRIAL_CAP || (trials >= MASS_PROBE_FROM && trials.is_power_of_two()) {
        let mut mass = false;
        for i in start..start + d {
            if checked_weight(env, walker, env.graph.edge(v, i))? > 0.0 {
                mass = true;
                break;
            }
        }
        if !mass {
            return Ok(Trial::DeadEnd);
        }
        if trials >= TRIAL_CAP {
            return Err(sampler_error(walker, SamplerError::TrialCapExceeded { trials }));
        }
    }
    Ok(Trial::Reject)
}

impl MoveStrategy for ORejMove {
    fn kind(&self) -> SamplerKind {
        SamplerKind::ORej
    }

    fn move_one(&self, env: &StepEnv<'_>, walker: &mut Walker, _: &TransitionContext) -> Result<StepOutcome, EngineError> {
        let v = walker.cur();
        let range = env.graph.edge_range(v);
        let (start, d) = (range.start, range.len());
        if d == 0 {
            return Ok(StepOutcome::DeadEnd);
        }
        let mut trials = 0;
        loop {
            trials += 1;
            let (x, y) = rej_dart(d, env.max_weight, walker.rng());
            match orej_check(env, walker, v, start, d, x, y, trials)? {
                Trial::Accept => return Ok(StepOutcome::Moved(env.graph.edge(v, start + x))),
                Trial::DeadEnd => return Ok(StepOutcome::DeadEnd),
                Trial::Reject => {}
            }
        }
    }

    fn move_group(&self, env: &StepEnv<'_>, ring: &mut TaskRing, search: &mut SearchRing) -> Result<(), EngineError> {
        stage_offsets(env, ring);
        for s in pending(ring) {
            s.staged.trials = 0;
            s.staged.stage = DART;
            s.staged.in_cycle = true;
        }
        let dart = |s: &mut TaskSlot| {
            if s.staged.trials == 0 && !load_range(env, s) {
                return true;
            }
            let (x, y) = rej_dart(s.staged.d, env.max_weight, s.walker.rng());
            let st = &mut s.staged;
            prefetch_edge(env, st.start + x);
            st.trials += 1;
            st.x = x;
            st.y = y;
            st.stage = CHECK;
            false
        };
        search.drive(ring.slots_mut(), |s| Ok(dart(s)), |s| {
            if s.staged.stage == DART {
                return Ok(dart(s));
            }
            let st = s.staged;
            match orej_check(env, &s.walker, st.v, st.start, st.d, st.x, st.y, st.trials)? {
                Trial::Accept => Ok(true),
                Trial::DeadEnd => {
                    s.outcome = SlotOutcome::DeadEnd;
                    Ok(true)
                }
                Trial::Reject => {
                    s.staged.stage = DART;
                    Ok(false)
                }
            }
        })?;
        stage_commit(env, ring);
        Ok(())
    }
}
