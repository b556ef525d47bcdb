//! Built-in walk programs and a registry that builds them by name.

mod deepwalk;
mod metapath;
mod node2vec;
mod ppr;
mod uniform;

pub use deepwalk::DeepWalk;
pub use metapath::{MetaPath, MetaPathSchema};
pub use node2vec::{Node2Vec, Node2VecParams};
pub use ppr::Ppr;
pub use uniform::UniformWalk;

use crate::engine::{EngineError, WalkProgram};
use crate::graph::Graph;

/// Parameters shared by the built-in programs; each reads the ones it needs.
#[derive(Clone, Debug, PartialEq)]
pub struct ProgramParams {
    pub termination: f64,
    /// Walk length in vertices.
    pub length: usize,
    pub a: f64,
    pub b: f64,
    /// Use edge weights. `None` means: deepwalk uses them when the graph has
    /// them, node2vec does not.
    pub weighted: Option<bool>,
    pub schema: Vec<u32>,
}

impl Default for ProgramParams {
    fn default() -> Self {
        Self { termination: 0.2, length: 80, a: 2.0, b: 0.5, weighted: None, schema: Vec::new() }
    }
}

pub type ProgramFactory = fn(&Graph, &ProgramParams) -> Result<Box<dyn WalkProgram>, EngineError>;

struct Entry {
    name: &'static str,
    summary: &'static str,
    build: ProgramFactory,
}

/// Walk programs by name.
pub struct ProgramRegistry {
    entries: Vec<Entry>,
}

impl Default for ProgramRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl ProgramRegistry {
    pub fn empty() -> Self {
        Self { entries: Vec::new() }
    }

    /// ppr, deepwalk, node2vec, metapath and custom-uniform.
    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register("ppr", "unbiased walks stopping with probability `termination` after each move", |_, p| {
            Ok(Box::new(Ppr::new(p.termination)?))
        });
        r.register("deepwalk", "static walks of `length` vertices weighted by edge weight", |g, p| {
            let weighted = p.weighted.unwrap_or(g.weights().is_some());
            Ok(Box::new(DeepWalk::new(g, p.length, weighted)?))
        });
        r.register("node2vec", "second-order walks with return parameter `a` and in-out parameter `b`", |g, p| {
            let params = Node2VecParams { a: p.a, b: p.b, target_length: p.length };
            Ok(Box::new(Node2Vec::new(g, params, p.weighted.unwrap_or(false))?))
        });
        r.register("metapath", "walks following the edge-label sequence `schema`", |g, p| {
            Ok(Box::new(MetaPath::new(MetaPathSchema::new(g, p.schema.clone())?)))
        });
        r.register("custom-uniform", "unbiased walks of `length` vertices", |_, p| {
            Ok(Box::new(UniformWalk::new(p.length)?))
        });
        r
    }

    /// Adds a program, replacing any earlier one with the same name.
    pub fn register(&mut self, name: &'static str, summary: &'static str, build: ProgramFactory) {
        self.entries.retain(|e| e.name != name);
        self.entries.push(Entry { name, summary, build });
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.iter().map(|e| e.name)
    }

    pub fn summary(&self, name: &str) -> Option<&'static str> {
        self.entries.iter().find(|e| e.name == name).map(|e| e.summary)
    }

    pub fn build(&self, name: &str, graph: &Graph, params: &ProgramParams) -> Result<Box<dyn WalkProgram>, EngineError> {
        let entry = self.entries.iter().find(|e| e.name == name).ok_or_else(|| {
            let known: Vec<_> = self.names().collect();
            EngineError::Config(format!("unknown algorithm `{name}` (known: {})", known.join(", ")))
        })?;
        (entry.build)(graph, params)
    }
}
