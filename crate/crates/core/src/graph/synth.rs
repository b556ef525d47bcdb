//! Synthetic edge attributes and generated test graphs.

use crate::rng::{hashed_unit, RngStream};

use super::{Graph, GraphError, VertexId};

const WEIGHT_SALT: u64 = 0x5745_4947;
const LABEL_SALT: u64 = 0x4C41_4245;

/// Weight of edge `index`, uniform in `[1, 5)`.
#[inline]
pub fn synthetic_weight(seed: u64, index: usize) -> f64 {
    1.0 + 4.0 * hashed_unit(seed, index as u64, WEIGHT_SALT)
}

/// Label of edge `index`, uniform over `0..k`.
#[inline]
pub fn synthetic_label(seed: u64, index: usize, k: u32) -> u32 {
    ((hashed_unit(seed, index as u64, LABEL_SALT) * k as f64) as u32).min(k - 1)
}

/// Preferential-attachment graph parameters.
#[derive(Clone, Copy, Debug)]
pub struct PowerLawConfig {
    pub vertices: usize,
    /// Undirected edges attached per new vertex.
    pub edges_per_vertex: usize,
    pub seed: u64,
    pub weights: bool,
    pub labels: Option<u32>,
}

/// Undirected Barabási–Albert style graph stored with both edge directions.
/// Every vertex has degree at least one, so walks never hit a zero-degree
/// vertex.
pub fn power_law_graph(cfg: &PowerLawConfig) -> Result<Graph, GraphError> {
    let n = cfg.vertices;
    let m = cfg.edges_per_vertex.max(1);
    if n < 2 {
        return Err(GraphError::Invalid("power-law graph needs at least two vertices".into()));
    }
    if n >= VertexId::MAX as usize {
        return Err(GraphError::Invalid("too many vertices".into()));
    }
    let mut rng = RngStream::new(cfg.seed);
    let seed_size = (m + 1).min(n);
    let mut pairs: Vec<(VertexId, VertexId)> = Vec::with_capacity(n * m);
    // endpoints of every edge so far; sampling from it is degree-proportional
    let mut endpoints: Vec<VertexId> = Vec::with_capacity(2 * n * m);
    for v in 1..seed_size {
        pairs.push((v as VertexId - 1, v as VertexId));
        endpoints.extend([v as VertexId - 1, v as VertexId]);
    }
    let mut picked: Vec<VertexId> = Vec::with_capacity(m);
    for v in seed_size..n {
        picked.clear();
        let mut attempts = 0;
        while picked.len() < m.min(v) && attempts < 8 * m {
            let t = endpoints[rng.index(endpoints.len())];
            attempts += 1;
            if !picked.contains(&t) {
                picked.push(t);
            }
        }
        for &t in &picked {
            pairs.push((t, v as VertexId));
            endpoints.extend([t, v as VertexId]);
        }
    }
    drop(endpoints);

    let mut offsets = vec![0u64; n + 1];
    for &(a, b) in &pairs {
        offsets[a as usize + 1] += 1;
        offsets[b as usize + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut cursor: Vec<u64> = offsets[..n].to_vec();
    let mut neighbors = vec![0 as VertexId; 2 * pairs.len()];
    for &(a, b) in &pairs {
        neighbors[cursor[a as usize] as usize] = b;
        cursor[a as usize] += 1;
        neighbors[cursor[b as usize] as usize] = a;
        cursor[b as usize] += 1;
    }
    drop(pairs);
    for v in 0..n {
        neighbors[offsets[v] as usize..offsets[v + 1] as usize].sort_unstable();
    }
    let e = neighbors.len();
    let weights = cfg.weights.then(|| (0..e).map(|i| synthetic_weight(cfg.seed, i)).collect());
    let labels = cfg.labels.map(|k| (0..e).map(|i| synthetic_label(cfg.seed, i, k)).collect());
    Graph::from_csr(offsets, neighbors, weights, labels)
}
