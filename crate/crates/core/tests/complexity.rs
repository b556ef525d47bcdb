//! Doubling the number of steps should roughly double the running time.

mod common;

use std::time::{Duration, Instant};

use walkforge::algorithms::{DeepWalk, Node2Vec, Node2VecParams, UniformWalk};
use walkforge::engine::{Engine, EngineOptions, Execution, Queries, RunOptions, WalkProgram};
use walkforge::interleave::RingConfig;
use walkforge::sampler::SamplerKind;

fn best_of(runs: usize, mut f: impl FnMut()) -> Duration {
    (0..runs)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed()
        })
        .min()
        .unwrap()
}

#[test]
fn doubling_steps_at_most_two_and_a_half_times_slower() {
    let g = common::power_law(20_000, 3);
    let queries = Queries::from_sources((0..20_000).collect());
    let cases: Vec<(SamplerKind, Box<dyn Fn(usize) -> Box<dyn WalkProgram>>)> = vec![
        (SamplerKind::Naive, Box::new(|l| Box::new(UniformWalk::new(l).unwrap()))),
        (SamplerKind::Its, Box::new(|l| Box::new(Node2Vec::new(&g, Node2VecParams { target_length: l, ..Default::default() }, false).unwrap()))),
        (SamplerKind::Alias, Box::new(|l| Box::new(DeepWalk::new(&g, l, true).unwrap()))),
        (SamplerKind::Rej, Box::new(|l| Box::new(DeepWalk::new(&g, l, true).unwrap()))),
        (SamplerKind::ORej, Box::new(|l| Box::new(Node2Vec::new(&g, Node2VecParams { target_length: l, ..Default::default() }, false).unwrap()))),
    ];
    for (kind, make) in &cases {
        let mut times = Vec::new();
        for length in [11, 21] {
            let program = make(length);
            let engine = Engine::new(&g, program.as_ref(), EngineOptions { sampler: Some(*kind), ..Default::default() }).unwrap();
            let opts = RunOptions { threads: 1, seed: 1, execution: Execution::Interleaved(RingConfig::default()) };
            times.push(best_of(3, || {
                engine.run(&queries, &opts, |_| Ok(())).unwrap();
            }));
        }
        let ratio = times[1].as_secs_f64() / times[0].as_secs_f64();
        assert!(ratio <= 2.5, "{kind}: {times:?} ratio {ratio}");
    }
}
