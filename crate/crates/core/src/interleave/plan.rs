//! Stage decompositions of Move, one per sampling method.
//!
//! Each stage performs at most one access to data that may be out of cache,
//! and that data was prefetched by an earlier stage. Stages in `cycle` repeat
//! until the walker leaves the loop and run through the search ring.

use crate::sampler::SamplerKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StageKind {
    /// Issues a prefetch for the next stage.
    Prefetch,
    /// Consumes prefetched data and computes.
    Compute,
    /// Decides whether to leave a cycle.
    Control,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stage {
    pub name: &'static str,
    pub kind: StageKind,
    /// Loads of possibly uncached data in this stage.
    pub loads: u8,
    pub action: &'static str,
}

const fn stage(name: &'static str, kind: StageKind, loads: u8, action: &'static str) -> Stage {
    Stage { name, kind, loads, action }
}

#[derive(Clone, Copy, Debug)]
pub struct StagePlan {
    pub sampler: SamplerKind,
    /// Stages before the cycle.
    pub head: &'static [Stage],
    pub cycle: &'static [Stage],
    /// Stages after the cycle.
    pub tail: &'static [Stage],
}

impl StagePlan {
    pub fn stages(&self) -> impl Iterator<Item = &'static Stage> {
        self.head.iter().chain(self.cycle).chain(self.tail)
    }
}

use StageKind::*;

const S0: Stage = stage("S0", Prefetch, 0, "prefetch offsets[v]");

pub static NAIVE_PLAN: StagePlan = StagePlan {
    sampler: SamplerKind::Naive,
    head: &[S0, stage("S1", Prefetch, 1, "read d_v, draw x, prefetch E_v[x]")],
    cycle: &[],
    tail: &[stage("S2", Compute, 1, "read E_v[x], commit")],
};

pub static ALIAS_PLAN: StagePlan = StagePlan {
    sampler: SamplerKind::Alias,
    head: &[
        S0,
        stage("S1", Prefetch, 1, "read d_v, draw x and y, prefetch (H[x], A[x])"),
        stage("S2", Prefetch, 1, "select A[x].first or A[x].second, prefetch E_v[i]"),
    ],
    cycle: &[],
    tail: &[stage("S3", Compute, 1, "read E_v[i], commit")],
};

pub static ITS_PLAN: StagePlan = StagePlan {
    sampler: SamplerKind::Its,
    head: &[
        S0,
        stage("S1", Prefetch, 1, "read d_v, prefetch cumulative[d-1]"),
        stage("S2", Compute, 1, "read total, draw x"),
    ],
    cycle: &[
        stage("S3", Prefetch, 0, "prefetch cumulative[mid]"),
        stage("S4", Control, 1, "compare x with cumulative[mid], halve range; on exit prefetch E_v[lo]"),
    ],
    tail: &[stage("S5", Compute, 1, "read E_v[lo], commit")],
};

pub static REJ_PLAN: StagePlan = StagePlan {
    sampler: SamplerKind::Rej,
    head: &[S0, stage("S1", Prefetch, 1, "read d_v, prefetch p*_v")],
    cycle: &[
        stage("S2", Prefetch, 1, "read p*_v, draw x and y, prefetch C[x]"),
        stage("S3", Control, 1, "accept if y < C[x], else back to S2"),
    ],
    tail: &[stage("S4", Prefetch, 0, "prefetch E_v[x]"), stage("S5", Compute, 1, "read E_v[x], commit")],
};

pub static OREJ_PLAN: StagePlan = StagePlan {
    sampler: SamplerKind::ORej,
    head: &[S0],
    cycle: &[
        stage("S2", Prefetch, 1, "read d_v, draw x and y, prefetch E_v[x]"),
        stage("S3", Control, 1, "evaluate weight(E_v[x]), accept if y < weight, else back to S2"),
    ],
    tail: &[stage("S5", Compute, 1, "read E_v[x], commit")],
};

pub fn plan_for(kind: SamplerKind) -> &'static StagePlan {
    match kind {
        SamplerKind::Naive => &NAIVE_PLAN,
        SamplerKind::Its => &ITS_PLAN,
        SamplerKind::Alias => &ALIAS_PLAN,
        SamplerKind::Rej => &REJ_PLAN,
        SamplerKind::ORej => &OREJ_PLAN,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_load_per_stage_and_cycles_only_where_needed() {
        for kind in SamplerKind::ALL {
            let plan = plan_for(kind);
            assert_eq!(plan.sampler, kind);
            assert!(plan.stages().all(|s| s.loads <= 1), "{kind}");
            let cyclic = matches!(kind, SamplerKind::Its | SamplerKind::Rej | SamplerKind::ORej);
            assert_eq!(!plan.cycle.is_empty(), cyclic, "{kind}");
            assert_eq!(plan.head[0].kind, StageKind::Prefetch);
        }
    }
}
