//! Immutable CSR graph storage.
//!
//! Edges of vertex `v` occupy `neighbors[offsets[v]..offsets[v + 1]]`,
//! sorted by destination. Optional per-edge weights and labels are parallel
//! arrays indexed by the same global edge id.

mod binary;
mod load;
mod synth;

pub use binary::{read_binary, write_binary, MAGIC};
pub use load::{load_edge_list, parse_edge_list, Directedness, LabelMode, LoadOptions, LoadedGraph, WeightMode};
pub use synth::{power_law_graph, synthetic_label, synthetic_weight, PowerLawConfig};

use std::ops::Range;

use thiserror::Error;

pub type VertexId = u32;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("edge list contains no edges")]
    Empty,
    #[error("bad magic {found:?}, expected \"WFG1\"")]
    BadMagic { found: [u8; 4] },
    #[error("file truncated while reading {section}")]
    Truncated { section: &'static str },
    #[error("section mismatch: {0}")]
    SectionMismatch(String),
    #[error("invalid graph: {0}")]
    Invalid(String),
    #[error("vertex {vertex} out of range (vertex_count {vertex_count})")]
    VertexOutOfRange { vertex: u64, vertex_count: usize },
    #[error("edge offset {offset} out of range for vertex {vertex} with degree {degree}")]
    EdgeOutOfRange { vertex: VertexId, offset: usize, degree: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One directed edge, addressed by its global position in the edge arrays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
    pub index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GraphStats {
    pub d_avg: f64,
    pub d_max: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    offsets: Vec<u64>,
    neighbors: Vec<VertexId>,
    weights: Option<Vec<f64>>,
    labels: Option<Vec<u32>>,
    stats: GraphStats,
}

impl Graph {
    /// Builds a graph from raw CSR arrays, validating every invariant.
    pub fn from_csr(
        offsets: Vec<u64>,
        neighbors: Vec<VertexId>,
        weights: Option<Vec<f64>>,
        labels: Option<Vec<u32>>,
    ) -> Result<Self, GraphError> {
        if offsets.is_empty() {
            return Err(GraphError::Invalid("offsets must have vertex_count + 1 entries".into()));
        }
        if offsets[0] != 0 {
            return Err(GraphError::Invalid("offsets[0] must be 0".into()));
        }
        if *offsets.last().unwrap() != neighbors.len() as u64 {
            return Err(GraphError::Invalid(format!(
                "offsets end at {} but there are {} edges",
                offsets.last().unwrap(),
                neighbors.len()
            )));
        }
        if offsets.windows(2).any(|w| w[0] > w[1]) {
            return Err(GraphError::Invalid("offsets must be nondecreasing".into()));
        }
        let n = offsets.len() - 1;
        if let Some(bad) = neighbors.iter().find(|&&d| d as usize >= n) {
            return Err(GraphError::Invalid(format!("neighbor id {bad} >= vertex_count {n}")));
        }
        if let Some(w) = &weights {
            if w.len() != neighbors.len() {
                return Err(GraphError::Invalid("weights length differs from edge count".into()));
            }
            if let Some(bad) = w.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
                return Err(GraphError::Invalid(format!("weight {bad} is not a finite non-negative real")));
            }
        }
        if let Some(l) = &labels {
            if l.len() != neighbors.len() {
                return Err(GraphError::Invalid("labels length differs from edge count".into()));
            }
        }
        let d_max = offsets.windows(2).map(|w| (w[1] - w[0]) as usize).max().unwrap_or(0);
        let d_avg = if n == 0 { 0.0 } else { neighbors.len() as f64 / n as f64 };
        Ok(Self { offsets, neighbors, weights, labels, stats: GraphStats { d_avg, d_max } })
    }

    /// Builds a graph from `(src, dst)` pairs, sorting them by `(src, dst)`.
    /// Parallel edges and self loops are kept.
    pub fn from_edges(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut sorted = edges.to_vec();
        sorted.sort();
        let mut offsets = vec![0u64; vertex_count + 1];
        for &(s, d) in &sorted {
            if s as usize >= vertex_count || d as usize >= vertex_count {
                return Err(GraphError::VertexOutOfRange { vertex: s.max(d) as u64, vertex_count });
            }
            offsets[s as usize + 1] += 1;
        }
        for i in 0..vertex_count {
            offsets[i + 1] += offsets[i];
        }
        let neighbors = sorted.into_iter().map(|(_, d)| d).collect();
        Self::from_csr(offsets, neighbors, None, None)
    }

    pub fn with_weights(self, weights: Vec<f64>) -> Result<Self, GraphError> {
        Self::from_csr(self.offsets, self.neighbors, Some(weights), self.labels)
    }

    pub fn with_labels(self, labels: Vec<u32>) -> Result<Self, GraphError> {
        Self::from_csr(self.offsets, self.neighbors, self.weights, Some(labels))
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn stats(&self) -> GraphStats {
        self.stats
    }

    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn neighbors(&self) -> &[VertexId] {
        &self.neighbors
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn labels(&self) -> Option<&[u32]> {
        self.labels.as_deref()
    }

    pub fn max_weight(&self) -> Option<f64> {
        self.weights.as_ref().map(|w| w.iter().copied().fold(0.0, f64::max))
    }

    /// Range of global edge ids leaving `v`. Unchecked beyond the slice
    /// bounds check on `offsets`.
    #[inline]
    pub fn edge_range(&self, v: VertexId) -> Range<usize> {
        let v = v as usize;
        self.offsets[v] as usize..self.offsets[v + 1] as usize
    }

    #[inline]
    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[self.edge_range(v)]
    }

    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.edge_range(v).len())
    }

    /// The `i`-th edge adjacent to `v`.
    pub fn edge_at(&self, v: VertexId, i: usize) -> Result<Edge, GraphError> {
        self.check_vertex(v)?;
        let range = self.edge_range(v);
        if i >= range.len() {
            return Err(GraphError::EdgeOutOfRange { vertex: v, offset: i, degree: range.len() });
        }
        Ok(self.edge(v, range.start + i))
    }

    #[inline]
    pub fn edge(&self, src: VertexId, index: usize) -> Edge {
        Edge { src, dst: self.neighbors[index], index }
    }

    #[inline]
    pub fn weight(&self, index: usize) -> Option<f64> {
        self.weights.as_ref().map(|w| w[index])
    }

    #[inline]
    pub fn label(&self, index: usize) -> Option<u32> {
        self.labels.as_ref().map(|l| l[index])
    }

    /// Whether `dst` is an out-neighbor of `src`, by binary search over the
    /// sorted adjacency of `src`.
    #[inline]
    pub fn has_edge(&self, src: VertexId, dst: VertexId) -> bool {
        self.out_neighbors(src).binary_search(&dst).is_ok()
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if (v as usize) < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v as u64, vertex_count: self.vertex_count() })
        }
    }
}
