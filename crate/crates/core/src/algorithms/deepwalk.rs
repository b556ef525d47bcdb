use crate::engine::{EngineError, WalkProgram, Walker, WalkerType};
use crate::graph::{Edge, Graph};
use crate::sampler::SamplerKind;

/// Fixed-length walks whose transition weights are the edge weights, or
/// uniform on an unweighted run.
#[derive(Clone, Debug)]
pub struct DeepWalk {
    length: usize,
    weighted: bool,
    max_weight: f64,
}

impl DeepWalk {
    /// `length` counts vertices, including the source.
    pub fn new(graph: &Graph, length: usize, weighted: bool) -> Result<Self, EngineError> {
        if length == 0 {
            return Err(EngineError::Config("walk length must be at least 1".into()));
        }
        let max_weight = if weighted {
            graph.max_weight().ok_or_else(|| EngineError::Config("weighted deepwalk needs edge weights".into()))?
        } else {
            1.0
        };
        Ok(Self { length, weighted, max_weight })
    }

    pub fn length(&self) -> usize {
        self.length
    }
}

impl WalkProgram for DeepWalk {
    fn name(&self) -> &str {
        "deepwalk"
    }

    fn walker_type(&self) -> WalkerType {
        WalkerType::Static
    }

    fn sampler(&self) -> SamplerKind {
        SamplerKind::Alias
    }

    fn weight(&self, graph: &Graph, _: Option<&Walker>, edge: Edge) -> f64 {
        if self.weighted {
            graph.weight(edge.index).unwrap_or(1.0)
        } else {
            1.0
        }
    }

    fn update(&self, _: &Graph, walker: &mut Walker, _: Edge) -> bool {
        walker.len() >= self.length
    }

    fn max_weight(&self) -> Option<f64> {
        Some(self.max_weight)
    }

    fn finished_at_start(&self, walker: &Walker) -> bool {
        walker.len() >= self.length
    }
}
