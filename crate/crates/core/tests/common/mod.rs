#![allow(dead_code)]

use std::collections::VecDeque;

use statrs::distribution::{ChiSquared, ContinuousCDF};
use walkforge::graph::{power_law_graph, Graph, PowerLawConfig, VertexId};

/// Weighted, five-label preferential-attachment graph.
pub fn power_law(vertices: usize, seed: u64) -> Graph {
    power_law_graph(&PowerLawConfig { vertices, edges_per_vertex: 4, seed, weights: true, labels: Some(5) }).unwrap()
}

pub fn frequencies(counts: &[u64]) -> Vec<f64> {
    let total: u64 = counts.iter().sum();
    counts.iter().map(|&c| c as f64 / total as f64).collect()
}

pub fn normalize(weights: &[f64]) -> Vec<f64> {
    let s: f64 = weights.iter().sum();
    weights.iter().map(|w| w / s).collect()
}

pub fn linf(counts: &[u64], probs: &[f64]) -> f64 {
    frequencies(counts).iter().zip(probs).map(|(f, p)| (f - p).abs()).fold(0.0, f64::max)
}

/// Pearson chi-square goodness of fit. Cells expecting fewer than five hits
/// are pooled. Returns `(statistic, critical value)` at significance `alpha`.
pub fn chi_square(counts: &[u64], probs: &[f64], alpha: f64) -> (f64, f64) {
    let n: u64 = counts.iter().sum();
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let (mut obs, mut exp) = (0.0, 0.0);
    for (&c, &p) in counts.iter().zip(probs) {
        if p == 0.0 {
            assert_eq!(c, 0, "hit on a zero-probability cell");
            continue;
        }
        obs += c as f64;
        exp += p * n as f64;
        if exp >= 5.0 {
            cells.push((obs, exp));
            obs = 0.0;
            exp = 0.0;
        }
    }
    if exp > 0.0 {
        match cells.last_mut() {
            Some(last) => {
                last.0 += obs;
                last.1 += exp;
            }
            None => cells.push((obs, exp)),
        }
    }
    if cells.len() < 2 {
        return (0.0, f64::INFINITY);
    }
    let stat = cells.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    let crit = ChiSquared::new((cells.len() - 1) as f64).unwrap().inverse_cdf(1.0 - alpha);
    (stat, crit)
}

/// Hop distance from `from` to `to` by breadth-first search.
pub fn hop_distance(g: &Graph, from: VertexId, to: VertexId) -> Option<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    let mut queue = VecDeque::from([from]);
    dist[from as usize] = 0;
    while let Some(u) = queue.pop_front() {
        if u == to {
            return Some(dist[u as usize]);
        }
        for &w in g.out_neighbors(u) {
            if dist[w as usize] == usize::MAX {
                dist[w as usize] = dist[u as usize] + 1;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Second-order node2vec transition probabilities over the out-edges of
/// `cur` after arriving from `prev`, from hop distances.
pub fn node2vec_distribution(g: &Graph, prev: VertexId, cur: VertexId, a: f64, b: f64) -> Vec<f64> {
    let weights: Vec<f64> = g
        .out_neighbors(cur)
        .iter()
        .map(|&dst| match hop_distance(g, prev, dst) {
            Some(0) => 1.0 / a,
            Some(1) => 1.0,
            _ => 1.0 / b,
        })
        .collect();
    normalize(&weights)
}
