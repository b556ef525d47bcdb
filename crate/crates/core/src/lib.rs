//! walkforge: an in-memory graph random-walk engine.
//!
//! A walk step is Gather (compute transition weights and initialize a
//! sampler), Move (pick an edge) and Update (decide whether to stop). Programs
//! implement [`engine::WalkProgram`]; the engine picks an execution flow from
//! the program's walker type and sampling method, and can interleave the Move
//! stages of many walkers on one thread to hide memory latency.
//!
//! ```
//! use walkforge::algorithms::DeepWalk;
//! use walkforge::engine::{run_sequential, QuerySpec};
//! use walkforge::graph::Graph;
//!
//! let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
//! let program = DeepWalk::new(&g, 5, false).unwrap();
//! let walks = run_sequential(&g, &QuerySpec::OnePerVertex, &program, 1, 7).unwrap();
//! assert_eq!(walks.records[0].path, vec![0, 1, 2, 0, 1]);
//! ```

pub mod algorithms;
pub mod engine;
pub mod graph;
pub mod interleave;
pub mod rng;
pub mod sampler;
