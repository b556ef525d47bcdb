use crate::engine::{EngineError, WalkProgram, Walker, WalkerType};
use crate::graph::{Edge, Graph};
use crate::sampler::SamplerKind;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Node2VecParams {
    /// Return parameter.
    pub a: f64,
    /// In-out parameter.
    pub b: f64,
    /// Walk length in vertices.
    pub target_length: usize,
}

impl Default for Node2VecParams {
    fn default() -> Self {
        Self { a: 2.0, b: 0.5, target_length: 80 }
    }
}

/// Second-order walks biased by the distance between the previous vertex and
/// the candidate destination:
///
/// ```text
///          1/a  if dst == prev
/// w(e) =   1    if prev -> dst is an edge
///          1/b  otherwise
/// ```
///
/// The first move has no previous vertex and uses the bound
/// `max(1/a, 1, 1/b)` for every edge. A weighted walk multiplies by `w_e`.
#[derive(Clone, Debug)]
pub struct Node2Vec {
    params: Node2VecParams,
    weighted: bool,
    bound: f64,
    max_weight: f64,
}

impl Node2Vec {
    pub fn new(graph: &Graph, params: Node2VecParams, weighted: bool) -> Result<Self, EngineError> {
        for (name, v) in [("a", params.a), ("b", params.b)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(EngineError::Config(format!("node2vec parameter {name} = {v} must be positive and finite")));
            }
        }
        if params.target_length == 0 {
            return Err(EngineError::Config("walk length must be at least 1".into()));
        }
        let bound = (1.0 / params.a).max(1.0).max(1.0 / params.b);
        let max_weight = if weighted {
            let w = graph.max_weight().ok_or_else(|| EngineError::Config("weighted node2vec needs edge weights".into()))?;
            bound * w
        } else {
            bound
        };
        Ok(Self { params, weighted, bound, max_weight })
    }

    pub fn params(&self) -> Node2VecParams {
        self.params
    }
}

impl WalkProgram for Node2Vec {
    fn name(&self) -> &str {
        "node2vec"
    }

    fn walker_type(&self) -> WalkerType {
        WalkerType::Dynamic
    }

    fn sampler(&self) -> SamplerKind {
        SamplerKind::ORej
    }

    fn weight(&self, graph: &Graph, walker: Option<&Walker>, edge: Edge) -> f64 {
        let base = match walker.and_then(Walker::prev) {
            None => self.bound,
            Some(prev) if prev == edge.dst => 1.0 / self.params.a,
            Some(prev) if graph.has_edge(prev, edge.dst) => 1.0,
            Some(_) => 1.0 / self.params.b,
        };
        if self.weighted {
            base * graph.weight(edge.index).unwrap_or(1.0)
        } else {
            base
        }
    }

    fn update(&self, _: &Graph, walker: &mut Walker, _: Edge) -> bool {
        walker.len() >= self.params.target_length
    }

    fn max_weight(&self) -> Option<f64> {
        Some(self.max_weight)
    }

    fn finished_at_start(&self, walker: &Walker) -> bool {
        walker.len() >= self.params.target_length
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;

    #[test]
    fn weights_by_distance() {
        // 0 -> 1, 1 -> {0, 2, 3}, 0 -> 2
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 0), (1, 2), (1, 3)]).unwrap();
        let p = Node2Vec::new(&g, Node2VecParams { a: 2.0, b: 0.5, target_length: 5 }, false).unwrap();
        assert_eq!(p.max_weight(), Some(2.0));
        let w = Walker::with_path(0, vec![0, 1], RngStream::new(0));
        let r = g.edge_range(1);
        let ws: Vec<f64> = r.map(|i| p.weight(&g, Some(&w), g.edge(1, i))).collect();
        assert_eq!(ws, vec![0.5, 1.0, 2.0]);
        let first = Walker::new(0, 1, 0);
        assert_eq!(p.weight(&g, Some(&first), g.edge(1, 2)), 2.0);
    }

    #[test]
    fn weighted_bound_scales() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap().with_weights(vec![3.0, 1.5]).unwrap();
        let p = Node2Vec::new(&g, Node2VecParams::default(), true).unwrap();
        assert_eq!(p.max_weight(), Some(6.0));
        assert!(Node2Vec::new(&g, Node2VecParams { a: 0.0, ..Default::default() }, false).is_err());
    }
}
