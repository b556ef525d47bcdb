mod common;

use common::{chi_square, linf, node2vec_distribution, normalize};
use walkforge::algorithms::{DeepWalk, MetaPath, MetaPathSchema, Node2Vec, Node2VecParams, Ppr};
use walkforge::engine::{Engine, EngineOptions, QuerySpec, RunOptions, StepOutcome, TransitionContext, Walker, WalkProgram};
use walkforge::graph::{Graph, VertexId};
use walkforge::rng::RngStream;
use walkforge::sampler::{
    alias_init, its_init, naive_generate, orej_generate, rej_generate, rej_init, SamplerKind,
};

const DRAWS: usize = 200_000;

fn draw_counts(kind: SamplerKind, weights: &[f64], seed: u64, draws: usize) -> Vec<u64> {
    let mut rng = RngStream::new(seed);
    let mut counts = vec![0u64; weights.len()];
    let n = weights.len();
    match kind {
        SamplerKind::Naive => (0..draws).for_each(|_| counts[naive_generate(n, &mut rng).unwrap()] += 1),
        SamplerKind::Its => {
            let s = its_init(weights).unwrap();
            (0..draws).for_each(|_| counts[s.generate(&mut rng)] += 1);
        }
        SamplerKind::Alias => {
            let s = alias_init(weights).unwrap();
            (0..draws).for_each(|_| counts[s.generate(&mut rng)] += 1);
        }
        SamplerKind::Rej => {
            let p = rej_init(weights).unwrap().p_star;
            (0..draws).for_each(|_| counts[rej_generate(|i| weights[i], n, p, &mut rng).unwrap().0] += 1);
        }
        SamplerKind::ORej => {
            (0..draws).for_each(|_| counts[orej_generate(|i| weights[i], n, 10.0, &mut rng).unwrap().0] += 1);
        }
    }
    counts
}

#[test]
fn every_sampler_matches_random_distributions() {
    let mut gen = RngStream::new(2024);
    for trial in 0..20 {
        let n = 1 + gen.index(64);
        let weights: Vec<f64> = (0..n).map(|_| 10.0 - gen.below(10.0)).collect();
        for kind in SamplerKind::ALL {
            let w = if kind == SamplerKind::Naive { vec![1.0; n] } else { weights.clone() };
            let probs = normalize(&w);
            let counts = draw_counts(kind, &w, trial * 31 + 7, DRAWS);
            let d = linf(&counts, &probs);
            assert!(d < 0.01, "{kind} trial {trial}: L-inf {d}");
            let (stat, crit) = chi_square(&counts, &probs, 1e-4);
            assert!(stat < crit, "{kind} trial {trial}: chi-square {stat} >= {crit}");
        }
    }
}

#[test]
fn zero_weight_elements_are_never_drawn() {
    let w = [0.0, 2.0, 0.0, 1.0, 0.0];
    for kind in [SamplerKind::Its, SamplerKind::Alias, SamplerKind::Rej, SamplerKind::ORej] {
        let counts = draw_counts(kind, &w, 3, 50_000);
        assert_eq!((counts[0], counts[2], counts[4]), (0, 0, 0), "{kind}");
    }
}

fn first_step_frequencies(g: &Graph, program: &dyn WalkProgram, kind: SamplerKind, source: VertexId, n: u64) -> Vec<u64> {
    let engine = Engine::new(g, program, EngineOptions { sampler: Some(kind), ..Default::default() }).unwrap();
    let range = g.edge_range(source);
    let mut counts = vec![0u64; range.len()];
    let mut ctx = TransitionContext::new(kind);
    for id in 0..n {
        let mut w = Walker::new(id, source, 99);
        match engine.move_walker(&mut w, &mut ctx).unwrap() {
            StepOutcome::Moved(e) => counts[e.index - range.start] += 1,
            StepOutcome::DeadEnd => panic!("unexpected dead end"),
        }
    }
    counts
}

#[test]
fn weighted_deepwalk_first_step() {
    let g = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 0), (2, 0)]).unwrap().with_weights(vec![1.0, 3.0, 1.0, 1.0]).unwrap();
    let program = DeepWalk::new(&g, 5, true).unwrap();
    for kind in [SamplerKind::Its, SamplerKind::Alias, SamplerKind::Rej, SamplerKind::ORej] {
        let counts = first_step_frequencies(&g, &program, kind, 0, 200_000);
        assert!(linf(&counts, &[0.25, 0.75]) < 0.01, "{kind}");
    }
}

#[test]
fn alias_move_over_weights_one_two_three() {
    let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap().with_weights(vec![1.0, 2.0, 3.0]).unwrap();
    let program = DeepWalk::new(&g, 2, true).unwrap();
    let counts = first_step_frequencies(&g, &program, SamplerKind::Alias, 0, 300_000);
    assert!(linf(&counts, &[1.0 / 6.0, 1.0 / 3.0, 0.5]) < 0.01);
}

#[test]
fn unweighted_deepwalk_matches_uniform_moves() {
    let g = common::power_law(200, 4);
    let hub = (0..200).max_by_key(|&v| g.out_neighbors(v).len()).unwrap();
    let d = g.out_neighbors(hub).len();
    let program = DeepWalk::new(&g, 5, false).unwrap();
    let alias = first_step_frequencies(&g, &program, SamplerKind::Alias, hub, 200_000);
    let uniform = vec![1.0 / d as f64; d];
    assert!(linf(&alias, &uniform) < 0.01);
    let (stat, crit) = chi_square(&alias, &uniform, 1e-4);
    assert!(stat < crit);
}

#[test]
fn metapath_first_step_filters_labels() {
    let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap().with_labels(vec![4, 4, 1]).unwrap();
    let program = MetaPath::new(MetaPathSchema::new(&g, vec![4]).unwrap());
    for kind in [SamplerKind::Its, SamplerKind::Alias, SamplerKind::Rej, SamplerKind::ORej] {
        let counts = first_step_frequencies(&g, &program, kind, 0, 100_000);
        assert_eq!(counts[2], 0);
        assert!(linf(&counts, &[0.5, 0.5, 0.0]) < 0.01, "{kind}");
    }
}

#[test]
fn ppr_end_vertex_on_a_star() {
    // hub 0 with leaves 1..=4; every leaf leads back to the hub
    let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 0), (2, 0), (3, 0), (4, 0)]).unwrap();
    let p = 0.2;
    let program = Ppr::new(p).unwrap();
    let engine = Engine::new(&g, &program, EngineOptions::default()).unwrap();
    let q = QuerySpec::FromSource { source: 0, count: 400_000 }.resolve(&g).unwrap();
    let walks = engine.collect(&q, &RunOptions { threads: 2, seed: 4, ..Default::default() }).unwrap().walks;
    let mut counts = [0u64; 5];
    for r in &walks.records {
        counts[*r.path.last().unwrap() as usize] += 1;
    }
    // the walk alternates hub/leaf and stops after an odd number of moves
    // (at a leaf) with probability sum_k p (1-p)^(2k) = 1 / (2 - p)
    let leaf = 1.0 / (2.0 - p);
    let expect = [1.0 - leaf, leaf / 4.0, leaf / 4.0, leaf / 4.0, leaf / 4.0];
    assert!(linf(&counts, &expect) < 0.01);
    let leaves: Vec<u64> = counts[1..].to_vec();
    assert!(linf(&leaves, &[0.25; 4]) < 0.01);
}

#[test]
fn node2vec_second_step_matches_hop_distances() {
    // triangle plus a pendant vertex: 0-1, 1-2, 2-0, 2-3
    let und = [(0, 1), (1, 2), (2, 0), (2, 3)];
    let edges: Vec<(u32, u32)> = und.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
    let g = Graph::from_edges(4, &edges).unwrap();
    let (a, b) = (2.0, 0.5);
    let program = Node2Vec::new(&g, Node2VecParams { a, b, target_length: 3 }, false).unwrap();
    for kind in [SamplerKind::Its, SamplerKind::Alias, SamplerKind::Rej, SamplerKind::ORej] {
        let engine = Engine::new(&g, &program, EngineOptions { sampler: Some(kind), ..Default::default() }).unwrap();
        for (prev, cur) in [(0, 2), (3, 2), (1, 0)] {
            let expect = node2vec_distribution(&g, prev, cur, a, b);
            let range = g.edge_range(cur);
            let mut counts = vec![0u64; range.len()];
            let mut ctx = TransitionContext::new(kind);
            for id in 0..100_000 {
                let mut w = Walker::with_path(id, vec![prev, cur], RngStream::for_query(5, id));
                if let StepOutcome::Moved(e) = engine.move_walker(&mut w, &mut ctx).unwrap() {
                    counts[e.index - range.start] += 1;
                }
            }
            assert!(linf(&counts, &expect) < 0.01, "{kind} {prev}->{cur}: {counts:?} vs {expect:?}");
        }
    }
}
