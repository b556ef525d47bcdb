use crate::engine::{EngineError, WalkProgram, Walker, WalkerType};
use crate::graph::{Edge, Graph};

/// Fixed-length unbiased walks.
#[derive(Clone, Debug)]
pub struct UniformWalk {
    length: usize,
}

impl UniformWalk {
    pub fn new(length: usize) -> Result<Self, EngineError> {
        if length == 0 {
            return Err(EngineError::Config("walk length must be at least 1".into()));
        }
        Ok(Self { length })
    }
}

impl WalkProgram for UniformWalk {
    fn name(&self) -> &str {
        "custom-uniform"
    }

    fn walker_type(&self) -> WalkerType {
        WalkerType::Unbiased
    }

    fn weight(&self, _: &Graph, _: Option<&Walker>, _: Edge) -> f64 {
        1.0
    }

    fn update(&self, _: &Graph, walker: &mut Walker, _: Edge) -> bool {
        walker.len() >= self.length
    }

    fn max_weight(&self) -> Option<f64> {
        Some(1.0)
    }

    fn finished_at_start(&self, walker: &Walker) -> bool {
        walker.len() >= self.length
    }
}
