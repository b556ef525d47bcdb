mod common;

use proptest::prelude::*;
use walkforge::algorithms::{ProgramParams, ProgramRegistry};
use walkforge::engine::{Engine, EngineOptions, Execution, QuerySpec, Queries, RunOptions, WalkProgram, WalkSet};
use walkforge::graph::{Graph, VertexId};
use walkforge::interleave::{PrefetchLevel, RingConfig};
use walkforge::sampler::SamplerKind;

fn params(g: &Graph) -> ProgramParams {
    ProgramParams {
        length: 20,
        weighted: Some(g.weights().is_some()),
        schema: vec![0, 1, 2, 3, 4, 0, 1],
        ..ProgramParams::default()
    }
}

fn samplers_for(program: &dyn WalkProgram) -> Vec<SamplerKind> {
    SamplerKind::ALL
        .into_iter()
        .filter(|&k| k != SamplerKind::Naive || program.walker_type() == walkforge::engine::WalkerType::Unbiased)
        .collect()
}

fn run(engine: &Engine<'_>, queries: &Queries, threads: usize, execution: Execution) -> WalkSet {
    engine.collect(queries, &RunOptions { threads, seed: 42, execution }).unwrap().walks
}

fn rings() -> Vec<RingConfig> {
    vec![
        RingConfig::new(1, 1),
        RingConfig::new(7, 3),
        RingConfig::default(),
        RingConfig { k: 16, k_prime: 16, prefetch: PrefetchLevel::Off },
        RingConfig { k: 32, k_prime: 8, prefetch: PrefetchLevel::NonTemporal },
    ]
}

#[test]
fn interleaved_matches_sequential_for_every_sampler_and_program() {
    let g = common::power_law(2000, 5);
    let queries = QuerySpec::OnePerVertex.resolve(&g).unwrap();
    let registry = ProgramRegistry::builtin();
    for name in ["deepwalk", "ppr", "node2vec", "metapath", "custom-uniform"] {
        let program = registry.build(name, &g, &params(&g)).unwrap();
        for kind in samplers_for(program.as_ref()) {
            let engine =
                Engine::new(&g, program.as_ref(), EngineOptions { sampler: Some(kind), ..Default::default() }).unwrap();
            let expected = run(&engine, &queries, 1, Execution::Sequential);
            assert_eq!(expected.len(), queries.len());
            for ring in rings() {
                let got = run(&engine, &queries, 1, Execution::Interleaved(ring));
                assert!(got == expected, "{name}/{kind} with {ring:?} differs from sequential");
            }
            let threaded = run(&engine, &queries, 8, Execution::Interleaved(RingConfig::default()));
            assert!(threaded == expected, "{name}/{kind}: 8 threads differ");
            let threaded = run(&engine, &queries, 3, Execution::Sequential);
            assert!(threaded == expected, "{name}/{kind}: 3 sequential threads differ");
        }
    }
}

#[test]
fn static_tables_match_per_step_gather() {
    let g = common::power_law(1500, 9);
    let queries = QuerySpec::FromSource { source: 3, count: 500 }.resolve(&g).unwrap();
    let program = ProgramRegistry::builtin().build("deepwalk", &g, &params(&g)).unwrap();
    for kind in [SamplerKind::Its, SamplerKind::Alias, SamplerKind::Rej] {
        let pre = Engine::new(&g, program.as_ref(), EngineOptions { sampler: Some(kind), static_preprocessing: true })
            .unwrap();
        let gather =
            Engine::new(&g, program.as_ref(), EngineOptions { sampler: Some(kind), static_preprocessing: false })
                .unwrap();
        assert!(pre.table().is_some() && gather.table().is_none());
        for exec in [Execution::Sequential, Execution::Interleaved(RingConfig::default())] {
            assert!(run(&pre, &queries, 1, exec) == run(&gather, &queries, 1, exec), "{kind}");
        }
    }
}

#[test]
fn ring_occupancy_stays_within_bounds() {
    let g = common::power_law(1000, 1);
    let queries = QuerySpec::OnePerVertex.resolve(&g).unwrap();
    let program = ProgramRegistry::builtin().build("node2vec", &g, &params(&g)).unwrap();
    for kind in [SamplerKind::Its, SamplerKind::Rej, SamplerKind::ORej] {
        let engine = Engine::new(&g, program.as_ref(), EngineOptions { sampler: Some(kind), ..Default::default() }).unwrap();
        for ring in rings() {
            let out = engine
                .collect(&queries, &RunOptions { threads: 2, seed: 1, execution: Execution::Interleaved(ring) })
                .unwrap();
            assert!(out.stats.ring.max_task_ring <= ring.k);
            assert!(out.stats.ring.max_search_ring <= ring.k_prime);
            assert!(out.stats.ring.max_task_ring >= 1);
        }
    }
}

fn graph_from(n: usize, edges: &[(u32, u32)], weights: &[f64]) -> Graph {
    let edges: Vec<(VertexId, VertexId)> = edges.iter().map(|&(a, b)| (a % n as u32, b % n as u32)).collect();
    let g = Graph::from_edges(n, &edges).unwrap();
    let m = g.edge_count();
    let ws: Vec<f64> = (0..m).map(|i| weights[i % weights.len()]).collect();
    let labels: Vec<u32> = (0..m as u32).map(|i| i % 3).collect();
    g.with_weights(ws).unwrap().with_labels(labels).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn equivalence_on_random_graphs(
        n in 2usize..40,
        edges in proptest::collection::vec((0u32..64, 0u32..64), 1..160),
        weights in proptest::collection::vec(prop_oneof![Just(0.0), 0.1f64..5.0], 1..8),
        k in 1usize..20,
        kp_frac in 0.0f64..1.0,
        seed in any::<u64>(),
        program_ix in 0usize..4,
        kind_ix in 0usize..5,
    ) {
        let g = graph_from(n, &edges, &weights);
        let name = ["deepwalk", "ppr", "node2vec", "metapath"][program_ix];
        let mut p = params(&g);
        p.schema = vec![0, 1, 2];
        p.length = 6;
        let program = match ProgramRegistry::builtin().build(name, &g, &p) {
            Ok(p) => p,
            Err(_) => return Ok(()),
        };
        let kind = SamplerKind::ALL[kind_ix];
        let engine = match Engine::new(&g, program.as_ref(), EngineOptions { sampler: Some(kind), ..Default::default() }) {
            Ok(e) => e,
            Err(_) => return Ok(()),
        };
        let queries = QuerySpec::OnePerVertex.resolve(&g).unwrap();
        let k_prime = 1 + ((k - 1) as f64 * kp_frac) as usize;
        let seq = engine.collect(&queries, &RunOptions { threads: 1, seed, execution: Execution::Sequential }).unwrap();
        let il = engine
            .collect(&queries, &RunOptions { threads: 2, seed, execution: Execution::Interleaved(RingConfig::new(k, k_prime)) })
            .unwrap();
        prop_assert!(seq.walks == il.walks);
        prop_assert_eq!(seq.stats.total_steps, il.stats.total_steps);
    }
}
