use std::fs;
use std::path::Path;

use crate::graph::{Graph, GraphError, VertexId};

use super::EngineError;

/// Which walks to run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuerySpec {
    /// One query from every vertex, in vertex order.
    OnePerVertex,
    /// `count` queries from a single source.
    FromSource { source: VertexId, count: u64 },
    /// `(source, count)` pairs, in order.
    List(Vec<(VertexId, u64)>),
}

impl QuerySpec {
    /// Reads a query file: one `source [count]` pair per line, `#` comments.
    /// A missing count means one query.
    pub fn read_file(path: impl AsRef<Path>) -> Result<Self, GraphError> {
        let text = fs::read_to_string(path)?;
        let mut list = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |what: &str| GraphError::Parse { line: i + 1, message: format!("invalid {what}") };
            let mut cols = line.split_whitespace();
            let source = cols.next().unwrap().parse::<VertexId>().map_err(|_| bad("source vertex"))?;
            let count = match cols.next() {
                Some(c) => c.parse::<u64>().map_err(|_| bad("query count"))?,
                None => 1,
            };
            if cols.next().is_some() {
                return Err(bad("line: expected `source [count]`"));
            }
            list.push((source, count));
        }
        Ok(Self::List(list))
    }

    pub fn resolve(&self, graph: &Graph) -> Result<Queries, EngineError> {
        let n = graph.vertex_count();
        let check = |v: VertexId| {
            if (v as usize) < n {
                Ok(v)
            } else {
                Err(EngineError::Config(format!("source vertex {v} does not exist (vertex_count {n})")))
            }
        };
        let sources = match self {
            Self::OnePerVertex => (0..n as VertexId).collect(),
            Self::FromSource { source, count } => vec![check(*source)?; *count as usize],
            Self::List(list) => {
                let mut out = Vec::new();
                for &(s, c) in list {
                    out.extend(std::iter::repeat_n(check(s)?, c as usize));
                }
                out
            }
        };
        Ok(Queries { sources })
    }
}

/// Resolved queries: query `i` starts at `sources[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Queries {
    sources: Vec<VertexId>,
}

impl Queries {
    pub fn from_sources(sources: Vec<VertexId>) -> Self {
        Self { sources }
    }

    pub fn len(&self) -> usize {
        self.sources.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sources.is_empty()
    }

    #[inline]
    pub fn source(&self, id: u64) -> VertexId {
        self.sources[id as usize]
    }

    /// Contiguous query-id block of `worker` out of `workers`.
    pub fn block(&self, worker: usize, workers: usize) -> std::ops::Range<u64> {
        let n = self.sources.len() as u64;
        let w = workers as u64;
        (n * worker as u64 / w)..(n * (worker as u64 + 1) / w)
    }
}
