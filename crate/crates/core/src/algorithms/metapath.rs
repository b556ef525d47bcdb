use std::collections::HashSet;

use crate::engine::{EngineError, WalkProgram, Walker, WalkerType};
use crate::graph::{Edge, Graph};
use crate::rng::RngStream;
use crate::sampler::SamplerKind;

/// Edge labels a walk must follow, one per move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetaPathSchema(Vec<u32>);

impl MetaPathSchema {
    /// Checks the schema against the graph's labels.
    pub fn new(graph: &Graph, labels: Vec<u32>) -> Result<Self, EngineError> {
        if labels.is_empty() {
            return Err(EngineError::Config("metapath schema is empty".into()));
        }
        let present: HashSet<u32> = graph
            .labels()
            .ok_or_else(|| EngineError::Config("metapath needs an edge-labeled graph".into()))?
            .iter()
            .copied()
            .collect();
        if let Some(l) = labels.iter().find(|l| !present.contains(l)) {
            return Err(EngineError::Config(format!("schema label {l} does not occur in the graph")));
        }
        Ok(Self(labels))
    }

    /// `len` labels drawn uniformly, with repetition, from the distinct
    /// labels of the graph.
    pub fn random(graph: &Graph, len: usize, seed: u64) -> Result<Self, EngineError> {
        let mut distinct: Vec<u32> = graph
            .labels()
            .ok_or_else(|| EngineError::Config("metapath needs an edge-labeled graph".into()))?
            .iter()
            .copied()
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        distinct.sort_unstable();
        if distinct.is_empty() || len == 0 {
            return Err(EngineError::Config("cannot draw a schema from an empty label set".into()));
        }
        let mut rng = RngStream::new(seed);
        Ok(Self((0..len).map(|_| distinct[rng.index(distinct.len())]).collect()))
    }

    pub fn labels(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Walks whose `i`-th move must take an edge labeled `schema[i]`. A walk
/// ends after the last schema label, or as a dead end when no edge matches.
#[derive(Clone, Debug)]
pub struct MetaPath {
    schema: MetaPathSchema,
}

impl MetaPath {
    pub fn new(schema: MetaPathSchema) -> Self {
        Self { schema }
    }

    pub fn schema(&self) -> &MetaPathSchema {
        &self.schema
    }
}

impl WalkProgram for MetaPath {
    fn name(&self) -> &str {
        "metapath"
    }

    fn walker_type(&self) -> WalkerType {
        WalkerType::Dynamic
    }

    fn sampler(&self) -> SamplerKind {
        SamplerKind::Its
    }

    fn weight(&self, graph: &Graph, walker: Option<&Walker>, edge: Edge) -> f64 {
        let step = walker.map_or(0, Walker::steps);
        match self.schema.0.get(step) {
            Some(&want) if graph.label(edge.index) == Some(want) => 1.0,
            _ => 0.0,
        }
    }

    fn update(&self, _: &Graph, walker: &mut Walker, _: Edge) -> bool {
        walker.steps() >= self.schema.len()
    }

    fn max_weight(&self) -> Option<f64> {
        Some(1.0)
    }
}
