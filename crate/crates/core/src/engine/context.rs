//! Transition contexts: per-step gathered weights and per-vertex
//! preprocessed tables.

use crate::graph::{Graph, VertexId};
use crate::sampler::{
    alias_init_into, its_init_into, rej_init, AliasScratch, AliasSlot, SamplerError, SamplerKind,
};

use super::{EngineError, WalkProgram, Walker, WalkerType};

/// Borrowed view of what Move needs for the walker's current vertex.
#[derive(Clone, Copy, Debug)]
pub enum Transition<'a> {
    /// NAIVE: uniform over the out-edges.
    Uniform,
    Its(&'a [f64]),
    Alias(&'a [AliasSlot]),
    Rej { weights: &'a [f64], p_star: f64 },
    /// O-REJ: weights are computed on demand under a user envelope.
    OnDemand { p_star: f64 },
    DeadEnd,
}

/// Gathered weights plus the sampler's initialization output for one step.
#[derive(Debug)]
pub struct TransitionContext {
    kind: SamplerKind,
    pub weights: Vec<f64>,
    pub cumulative: Vec<f64>,
    pub alias: Vec<AliasSlot>,
    pub p_star: f64,
    dead: bool,
    scratch: AliasScratch,
}

impl TransitionContext {
    pub fn new(kind: SamplerKind) -> Self {
        Self {
            kind,
            weights: Vec::new(),
            cumulative: Vec::new(),
            alias: Vec::new(),
            p_star: 0.0,
            dead: false,
            scratch: AliasScratch::default(),
        }
    }

    pub fn kind(&self) -> SamplerKind {
        self.kind
    }

    /// Whether the last gather found no selectable edge.
    pub fn is_dead(&self) -> bool {
        self.dead
    }

    pub fn view(&self) -> Transition<'_> {
        if self.dead {
            return Transition::DeadEnd;
        }
        match self.kind {
            SamplerKind::Its => Transition::Its(&self.cumulative),
            SamplerKind::Alias => Transition::Alias(&self.alias),
            SamplerKind::Rej => Transition::Rej { weights: &self.weights, p_star: self.p_star },
            SamplerKind::Naive => Transition::Uniform,
            SamplerKind::ORej => Transition::OnDemand { p_star: self.p_star },
        }
    }
}

/// Maps an initialization failure: zero mass is a dead end, anything else a
/// program contract breach.
fn init_result(r: Result<(), SamplerError>, offset: usize, weights: &[f64]) -> Result<bool, EngineError> {
    match r {
        Ok(()) => Ok(false),
        Err(SamplerError::ZeroMass) | Err(SamplerError::EmptyDomain) => Ok(true),
        Err(SamplerError::InvalidWeight { index, .. }) => {
            Err(EngineError::InvalidWeight { edge: offset + index, weight: weights[index] })
        }
        Err(other) => unreachable!("initialization cannot fail with {other}"),
    }
}

fn init_into(
    kind: SamplerKind,
    weights: &[f64],
    cumulative: &mut Vec<f64>,
    alias: &mut Vec<AliasSlot>,
    scratch: &mut AliasScratch,
    p_star: &mut f64,
) -> Result<(), SamplerError> {
    match kind {
        SamplerKind::Its => its_init_into(weights, cumulative),
        SamplerKind::Alias => alias_init_into(weights, alias, scratch),
        SamplerKind::Rej => {
            *p_star = rej_init(weights)?.p_star;
            Ok(())
        }
        SamplerKind::Naive | SamplerKind::ORej => Ok(()),
    }
}

/// Collects `weight(walker, e)` over the current vertex's edges and runs the
/// sampler initialization into `ctx`, reusing its buffers.
pub fn gather_into(
    graph: &Graph,
    walker: &Walker,
    program: &dyn WalkProgram,
    ctx: &mut TransitionContext,
) -> Result<(), EngineError> {
    let v = walker.cur();
    let range = graph.edge_range(v);
    ctx.weights.clear();
    ctx.dead = range.is_empty();
    if ctx.dead {
        return Ok(());
    }
    let offset = range.start;
    ctx.weights.extend(range.map(|i| program.weight(graph, Some(walker), graph.edge(v, i))));
    let TransitionContext { kind, weights, cumulative, alias, p_star, scratch, .. } = ctx;
    let r = init_into(*kind, weights, cumulative, alias, scratch, p_star);
    ctx.dead = init_result(r, offset, &ctx.weights)?;
    Ok(())
}

/// Owned-context form of [`gather_into`].
pub fn gather(
    graph: &Graph,
    walker: &Walker,
    program: &dyn WalkProgram,
    kind: SamplerKind,
) -> Result<TransitionContext, EngineError> {
    if !kind.has_init() {
        return Err(EngineError::Config(format!("{kind} has no initialization phase to gather for")));
    }
    let mut ctx = TransitionContext::new(kind);
    gather_into(graph, walker, program, &mut ctx)?;
    Ok(ctx)
}

/// Per-vertex sampler tables for static and unbiased walks, laid out
/// parallel to the CSR edge array.
#[derive(Debug)]
pub struct StaticTable {
    kind: SamplerKind,
    /// ITS running sums; all zero for a vertex without mass.
    pub cumulative: Vec<f64>,
    /// ALIAS slots; [`AliasSlot::DEAD`] for a vertex without mass.
    pub alias: Vec<AliasSlot>,
    /// REJ raw weights.
    pub weights: Vec<f64>,
    /// REJ per-vertex envelope; zero for a vertex without mass.
    pub p_star: Vec<f64>,
}

impl StaticTable {
    pub fn kind(&self) -> SamplerKind {
        self.kind
    }

    pub fn view(&self, graph: &Graph, v: VertexId) -> Transition<'_> {
        let range = graph.edge_range(v);
        if range.is_empty() {
            return Transition::DeadEnd;
        }
        match self.kind {
            SamplerKind::Its => {
                let c = &self.cumulative[range];
                if c[c.len() - 1] > 0.0 {
                    Transition::Its(c)
                } else {
                    Transition::DeadEnd
                }
            }
            SamplerKind::Alias => {
                let a = &self.alias[range];
                if a[0].is_dead() {
                    Transition::DeadEnd
                } else {
                    Transition::Alias(a)
                }
            }
            SamplerKind::Rej => {
                let p_star = self.p_star[v as usize];
                if p_star > 0.0 {
                    Transition::Rej { weights: &self.weights[range], p_star }
                } else {
                    Transition::DeadEnd
                }
            }
            SamplerKind::Naive | SamplerKind::ORej => unreachable!("no static table for {}", self.kind),
        }
    }
}

/// Runs the sampler initialization over `weight(None, e)` for every vertex.
/// Returns `None` for methods without an initialization phase.
pub fn preprocess_static(
    graph: &Graph,
    program: &dyn WalkProgram,
    kind: SamplerKind,
) -> Result<Option<StaticTable>, EngineError> {
    if !kind.has_init() {
        return Ok(None);
    }
    if program.walker_type() == WalkerType::Dynamic {
        return Err(EngineError::Config(format!(
            "program {} is dynamic and cannot be preprocessed",
            program.name()
        )));
    }
    let m = graph.edge_count();
    let mut table = StaticTable {
        kind,
        cumulative: Vec::new(),
        alias: Vec::new(),
        weights: Vec::new(),
        p_star: Vec::new(),
    };
    match kind {
        SamplerKind::Its => table.cumulative.reserve_exact(m),
        SamplerKind::Alias => table.alias.reserve_exact(m),
        SamplerKind::Rej => {
            table.weights.reserve_exact(m);
            table.p_star.reserve_exact(graph.vertex_count());
        }
        _ => unreachable!(),
    }
    let mut weights = Vec::with_capacity(graph.stats().d_max);
    let mut cumulative = Vec::with_capacity(graph.stats().d_max);
    let mut alias = Vec::with_capacity(graph.stats().d_max);
    let mut scratch = AliasScratch::default();
    for v in 0..graph.vertex_count() as VertexId {
        let range = graph.edge_range(v);
        let offset = range.start;
        let d = range.len();
        weights.clear();
        weights.extend(range.map(|i| program.weight(graph, None, graph.edge(v, i))));
        let mut p_star = 0.0;
        let dead = if d == 0 {
            true
        } else {
            let r = init_into(kind, &weights, &mut cumulative, &mut alias, &mut scratch, &mut p_star);
            init_result(r, offset, &weights)?
        };
        match kind {
            SamplerKind::Its if dead => table.cumulative.extend(std::iter::repeat_n(0.0, d)),
            SamplerKind::Its => table.cumulative.extend_from_slice(&cumulative),
            SamplerKind::Alias if dead => table.alias.extend(std::iter::repeat_n(AliasSlot::DEAD, d)),
            SamplerKind::Alias => table.alias.extend_from_slice(&alias),
            SamplerKind::Rej => {
                table.weights.extend_from_slice(&weights);
                table.p_star.push(if dead { 0.0 } else { p_star });
            }
            _ => unreachable!(),
        }
    }
    Ok(Some(table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    struct Constant(f64, WalkerType);

    impl WalkProgram for Constant {
        fn name(&self) -> &str {
            "constant"
        }
        fn walker_type(&self) -> WalkerType {
            self.1
        }
        fn weight(&self, _: &Graph, _: Option<&Walker>, _: Edge) -> f64 {
            self.0
        }
        fn update(&self, _: &Graph, _: &mut Walker, _: Edge) -> bool {
            true
        }
    }

    fn star() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn uniform_its_gather_is_counting() {
        let g = star();
        let ctx = gather(&g, &Walker::new(0, 0, 1), &Constant(1.0, WalkerType::Dynamic), SamplerKind::Its).unwrap();
        assert_eq!(ctx.cumulative, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn zero_weights_and_zero_degree_are_dead_ends() {
        let g = star();
        let p = Constant(0.0, WalkerType::Dynamic);
        assert!(gather(&g, &Walker::new(0, 0, 1), &p, SamplerKind::Alias).unwrap().is_dead());
        let p = Constant(1.0, WalkerType::Dynamic);
        assert!(gather(&g, &Walker::new(0, 1, 1), &p, SamplerKind::Rej).unwrap().is_dead());
    }

    #[test]
    fn negative_weight_is_contract_error() {
        let g = star();
        let p = Constant(-1.0, WalkerType::Dynamic);
        let err = gather(&g, &Walker::new(0, 0, 1), &p, SamplerKind::Its).unwrap_err();
        assert!(matches!(err, EngineError::InvalidWeight { edge: 0, .. }));
    }

    #[test]
    fn static_alias_uniform_has_unit_thresholds() {
        let g = star();
        let t = preprocess_static(&g, &Constant(2.0, WalkerType::Static), SamplerKind::Alias).unwrap().unwrap();
        assert!(t.alias.iter().all(|s| s.prob == 1.0));
        assert!(matches!(t.view(&g, 1), Transition::DeadEnd));
    }

    #[test]
    fn static_its_on_triangle() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let t = preprocess_static(&g, &Constant(1.0, WalkerType::Unbiased), SamplerKind::Its).unwrap().unwrap();
        for v in 0..3 {
            assert!(matches!(t.view(&g, v), Transition::Its(c) if c == [1.0]));
        }
    }

    #[test]
    fn static_rej_envelopes() {
        let g = star().with_weights(vec![1.0, 4.0, 2.0]).unwrap();
        struct W;
        impl WalkProgram for W {
            fn name(&self) -> &str {
                "w"
            }
            fn walker_type(&self) -> WalkerType {
                WalkerType::Static
            }
            fn weight(&self, g: &Graph, _: Option<&Walker>, e: Edge) -> f64 {
                g.weight(e.index).unwrap()
            }
            fn update(&self, _: &Graph, _: &mut Walker, _: Edge) -> bool {
                true
            }
        }
        let t = preprocess_static(&g, &W, SamplerKind::Rej).unwrap().unwrap();
        assert_eq!(t.p_star, vec![4.0, 0.0, 0.0, 0.0]);
        assert!(preprocess_static(&g, &W, SamplerKind::ORej).unwrap().is_none());
        assert!(preprocess_static(&g, &Constant(1.0, WalkerType::Dynamic), SamplerKind::Its).is_err());
    }
}
