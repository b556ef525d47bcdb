//! Step-centric walk execution.
//!
//! A step of a walker is Gather (collect transition weights and run the
//! sampler's initialization), Move (select an edge and extend the path) and
//! Update (user state change, returns whether to stop). Static and unbiased
//! programs skip Gather by preprocessing every vertex once; NAIVE and O-REJ
//! skip both because they have no initialization phase.

mod context;
mod query;
mod run;

pub use context::{gather, gather_into, preprocess_static, StaticTable, Transition, TransitionContext};
pub use query::{QuerySpec, Queries};
pub use run::{run_interleaved, run_sequential, Engine, EngineOptions, Execution, Flow, RunOptions, RunStats, WalkOutput};

use std::fmt;

use thiserror::Error;

use crate::graph::{Edge, Graph, GraphError, VertexId};
use crate::rng::RngStream;
use crate::sampler::{SamplerError, SamplerKind};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("program returned weight {weight} for edge {edge}: weights must be finite and non-negative")]
    InvalidWeight { edge: usize, weight: f64 },
    #[error("program weight {weight} on edge {edge} exceeds its declared max_weight {max_weight}")]
    MaxWeightViolated { edge: usize, weight: f64, max_weight: f64 },
    #[error("query {query}: {source}")]
    Sampler { query: u64, source: SamplerError },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("output: {0}")]
    Output(#[from] std::io::Error),
    #[error("worker thread panicked")]
    WorkerPanic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WalkerType {
    /// Uniform over the out-edges of the current vertex.
    Unbiased,
    /// Fixed, query-independent weights.
    Static,
    /// Weights may depend on walker state.
    Dynamic,
}

/// NAIVE for unbiased, ALIAS for static, ITS for dynamic walks.
pub fn default_sampler(walker_type: WalkerType) -> SamplerKind {
    match walker_type {
        WalkerType::Unbiased => SamplerKind::Naive,
        WalkerType::Static => SamplerKind::Alias,
        WalkerType::Dynamic => SamplerKind::Its,
    }
}

/// A user-defined walk algorithm.
///
/// `weight` gives the relative chance of taking `edge` from the walker's
/// current vertex; static and unbiased programs receive `None` during
/// preprocessing and must return the same value they would for any walker.
/// `update` runs once after every move and returns `true` to stop the walk.
pub trait WalkProgram: Send + Sync {
    fn name(&self) -> &str;

    fn walker_type(&self) -> WalkerType;

    fn sampler(&self) -> SamplerKind {
        default_sampler(self.walker_type())
    }

    fn weight(&self, graph: &Graph, walker: Option<&Walker>, edge: Edge) -> f64;

    fn update(&self, graph: &Graph, walker: &mut Walker, edge: Edge) -> bool;

    /// Upper bound on every value `weight` can return. Required by O-REJ.
    fn max_weight(&self) -> Option<f64> {
        None
    }

    /// Whether a freshly started walker is already finished (e.g. a target
    /// length of one vertex).
    fn finished_at_start(&self, _walker: &Walker) -> bool {
        false
    }
}

/// One walk query.
#[derive(Clone, Debug)]
pub struct Walker {
    id: u64,
    path: Vec<VertexId>,
    rng: RngStream,
    /// Free per-walker state for programs.
    pub payload: u64,
}

impl Walker {
    pub fn new(id: u64, source: VertexId, global_seed: u64) -> Self {
        Self { id, path: vec![source], rng: RngStream::for_query(global_seed, id), payload: 0 }
    }

    /// A walker positioned at the end of `path`, for driving single steps.
    pub fn with_path(id: u64, path: Vec<VertexId>, rng: RngStream) -> Self {
        assert!(!path.is_empty(), "a walker path holds at least the source");
        Self { id, path, rng, payload: 0 }
    }

    #[inline]
    pub fn id(&self) -> u64 {
        self.id
    }

    #[inline]
    pub fn path(&self) -> &[VertexId] {
        &self.path
    }

    #[inline]
    pub fn cur(&self) -> VertexId {
        *self.path.last().unwrap()
    }

    /// The vertex visited before the current one.
    #[inline]
    pub fn prev(&self) -> Option<VertexId> {
        self.path.len().checked_sub(2).map(|i| self.path[i])
    }

    /// Number of vertices in the path.
    #[inline]
    pub fn len(&self) -> usize {
        self.path.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of completed moves.
    #[inline]
    pub fn steps(&self) -> usize {
        self.path.len() - 1
    }

    #[inline]
    pub fn rng(&mut self) -> &mut RngStream {
        &mut self.rng
    }

    #[inline]
    pub(crate) fn push(&mut self, v: VertexId) {
        self.path.push(v);
    }

    pub fn into_path(self) -> Vec<VertexId> {
        self.path
    }
}

/// Result of one Move.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Moved(Edge),
    /// No edge can be taken: zero degree or zero total weight.
    DeadEnd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WalkStatus {
    Complete,
    DeadEnd,
}

impl WalkStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Complete => "complete",
            Self::DeadEnd => "dead_end",
        }
    }
}

impl fmt::Display for WalkStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkRecord {
    pub id: u64,
    pub status: WalkStatus,
    pub path: Vec<VertexId>,
}

impl WalkRecord {
    pub fn steps(&self) -> usize {
        self.path.len() - 1
    }
}

/// Walks of all queries in query-id order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WalkSet {
    pub records: Vec<WalkRecord>,
}

impl WalkSet {
    pub fn total_steps(&self) -> u64 {
        self.records.iter().map(|r| r.steps() as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_samplers() {
        assert_eq!(default_sampler(WalkerType::Unbiased), SamplerKind::Naive);
        assert_eq!(default_sampler(WalkerType::Static), SamplerKind::Alias);
        assert_eq!(default_sampler(WalkerType::Dynamic), SamplerKind::Its);
    }

    #[test]
    fn walker_accessors() {
        let mut w = Walker::new(3, 7, 1);
        assert_eq!(w.cur(), 7);
        assert_eq!(w.prev(), None);
        assert_eq!(w.steps(), 0);
        w.push(9);
        assert_eq!(w.prev(), Some(7));
        assert_eq!(w.cur(), 9);
        assert_eq!(w.len(), 2);
    }
}
