use crate::engine::{EngineError, WalkProgram, Walker, WalkerType};
use crate::graph::{Edge, Graph};

/// Personalized PageRank walks: uniform moves, and after each move the walk
/// stops with a fixed probability.
#[derive(Clone, Debug)]
pub struct Ppr {
    termination: f64,
}

impl Ppr {
    pub fn new(termination: f64) -> Result<Self, EngineError> {
        if !(termination > 0.0 && termination <= 1.0) {
            return Err(EngineError::Config(format!("termination probability {termination} is not in (0, 1]")));
        }
        Ok(Self { termination })
    }

    pub fn termination(&self) -> f64 {
        self.termination
    }
}

impl WalkProgram for Ppr {
    fn name(&self) -> &str {
        "ppr"
    }

    fn walker_type(&self) -> WalkerType {
        WalkerType::Unbiased
    }

    fn weight(&self, _: &Graph, _: Option<&Walker>, _: Edge) -> f64 {
        1.0
    }

    fn update(&self, _: &Graph, walker: &mut Walker, _: Edge) -> bool {
        walker.rng().unit() < self.termination
    }

    fn max_weight(&self) -> Option<f64> {
        Some(1.0)
    }
}
