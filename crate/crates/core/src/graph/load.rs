//! Text edge-list loader.
//!
//! Lines are `src dst [weight] [label]`, whitespace separated; `#` starts a
//! comment line. Column 3 is the weight and column 4 the label. When labels
//! are read from the file but weights are not, a three-column line carries
//! its label in column 3.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use super::synth::{synthetic_label, synthetic_weight};
use super::{Graph, GraphError, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Directedness {
    Directed,
    Undirected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMode {
    FromFile,
    /// Uniform in `[1, 5)`, a pure function of `(seed, edge index)`.
    UniformRandom,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelMode {
    FromFile,
    /// Uniform over `0..k`, a pure function of `(seed, edge index)`.
    RandomK(u32),
    None,
}

#[derive(Clone, Copy, Debug)]
pub struct LoadOptions {
    pub directedness: Directedness,
    pub weight_mode: WeightMode,
    pub label_mode: LabelMode,
    pub seed: u64,
    /// Compact arbitrary input ids to `0..n` in ascending id order. When
    /// false, ids are used as-is and `vertex_count = max id + 1`.
    pub remap_ids: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            directedness: Directedness::Directed,
            weight_mode: WeightMode::None,
            label_mode: LabelMode::None,
            seed: 0,
            remap_ids: false,
        }
    }
}

#[derive(Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// `id_map[dense] = original id`, present when ids were remapped.
    pub id_map: Option<Vec<u64>>,
}

struct RawEdge {
    src: u64,
    dst: u64,
    weight: f64,
    label: u32,
}

pub fn load_edge_list(path: impl AsRef<Path>, opts: &LoadOptions) -> Result<LoadedGraph, GraphError> {
    let text = fs::read_to_string(path)?;
    parse_edge_list(&text, opts)
}

pub fn parse_edge_list(text: &str, opts: &LoadOptions) -> Result<LoadedGraph, GraphError> {
    let mut raw = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = trimmed.split_whitespace().collect();
        if cols.len() < 2 || cols.len() > 4 {
            return Err(GraphError::Parse {
                line: line_no,
                message: format!("expected `src dst [weight] [label]`, found {} columns", cols.len()),
            });
        }
        let id = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| GraphError::Parse { line: line_no, message: format!("invalid vertex id {s:?}") })
        };
        let src = id(cols[0])?;
        let dst = id(cols[1])?;
        let weight = match opts.weight_mode {
            WeightMode::FromFile => {
                let col = cols.get(2).ok_or_else(|| GraphError::Format {
                    line: line_no,
                    message: "weight column missing".into(),
                })?;
                let w: f64 = col
                    .parse()
                    .map_err(|_| GraphError::Parse { line: line_no, message: format!("invalid weight {col:?}") })?;
                if !(w.is_finite() && w >= 0.0) {
                    return Err(GraphError::Parse {
                        line: line_no,
                        message: format!("weight {w} is not a finite non-negative real"),
                    });
                }
                w
            }
            _ => 0.0,
        };
        let label = match opts.label_mode {
            LabelMode::FromFile => {
                let col_idx = if opts.weight_mode == WeightMode::FromFile || cols.len() == 4 { 3 } else { 2 };
                let col = cols.get(col_idx).ok_or_else(|| GraphError::Format {
                    line: line_no,
                    message: "label column missing".into(),
                })?;
                col.parse::<u32>()
                    .map_err(|_| GraphError::Parse { line: line_no, message: format!("invalid label {col:?}") })?
            }
            _ => 0,
        };
        raw.push(RawEdge { src, dst, weight, label });
        if opts.directedness == Directedness::Undirected {
            raw.push(RawEdge { src: dst, dst: src, weight, label });
        }
    }
    if raw.is_empty() {
        return Err(GraphError::Empty);
    }

    let (vertex_count, id_map) = if opts.remap_ids {
        let mut ids: Vec<u64> = raw.iter().flat_map(|e| [e.src, e.dst]).collect();
        ids.sort_unstable();
        ids.dedup();
        let lookup: HashMap<u64, u64> = ids.iter().enumerate().map(|(i, &id)| (id, i as u64)).collect();
        for e in &mut raw {
            e.src = lookup[&e.src];
            e.dst = lookup[&e.dst];
        }
        (ids.len(), Some(ids))
    } else {
        let max = raw.iter().map(|e| e.src.max(e.dst)).max().unwrap();
        if max >= VertexId::MAX as u64 {
            return Err(GraphError::Invalid(format!("vertex id {max} exceeds the 32-bit id space; remap ids")));
        }
        (max as usize + 1, None)
    };
    if vertex_count >= VertexId::MAX as usize {
        return Err(GraphError::Invalid(format!("{vertex_count} vertices exceed the 32-bit id space")));
    }

    // Stable: parallel edges keep their input order.
    raw.sort_by_key(|e| (e.src, e.dst));

    let mut offsets = vec![0u64; vertex_count + 1];
    for e in &raw {
        offsets[e.src as usize + 1] += 1;
    }
    for i in 0..vertex_count {
        offsets[i + 1] += offsets[i];
    }
    let neighbors: Vec<VertexId> = raw.iter().map(|e| e.dst as VertexId).collect();
    let weights = match opts.weight_mode {
        WeightMode::FromFile => Some(raw.iter().map(|e| e.weight).collect()),
        WeightMode::UniformRandom => Some((0..raw.len()).map(|i| synthetic_weight(opts.seed, i)).collect()),
        WeightMode::None => None,
    };
    let labels = match opts.label_mode {
        LabelMode::FromFile => Some(raw.iter().map(|e| e.label).collect()),
        LabelMode::RandomK(k) => {
            if k == 0 {
                return Err(GraphError::Invalid("random label count must be positive".into()));
            }
            Some((0..raw.len()).map(|i| synthetic_label(opts.seed, i, k)).collect())
        }
        LabelMode::None => None,
    };
    let graph = Graph::from_csr(offsets, neighbors, weights, labels)?;
    Ok(LoadedGraph { graph, id_map })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str, opts: LoadOptions) -> Result<Graph, GraphError> {
        parse_edge_list(text, &opts).map(|l| l.graph)
    }

    #[test]
    fn directed_triangle() {
        let g = parse("0 1\n1 2\n2 0\n", LoadOptions::default()).unwrap();
        assert_eq!(g.offsets(), &[0, 1, 2, 3]);
        assert_eq!(g.neighbors(), &[1, 2, 0]);
    }

    #[test]
    fn undirected_emits_both_directions() {
        let opts = LoadOptions { directedness: Directedness::Undirected, ..Default::default() };
        let g = parse("0 1\n", opts).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.out_neighbors(0), &[1]);
        assert_eq!(g.out_neighbors(1), &[0]);
    }

    #[test]
    fn comments_and_blank_lines_skipped() {
        let g = parse("# header\n\n0 1\n  # indented comment\n1 0\n", LoadOptions::default()).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn edges_sorted_by_source_then_destination() {
        let g = parse("1 0\n0 2\n0 1\n", LoadOptions::default()).unwrap();
        assert_eq!(g.neighbors(), &[1, 2, 0]);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = parse("0 1\n1 x\n", LoadOptions::default()).unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 2, .. }), "{err}");
        let err = parse("0 1\n5\n", LoadOptions::default()).unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn missing_weight_column_is_format_error() {
        let opts = LoadOptions { weight_mode: WeightMode::FromFile, ..Default::default() };
        let err = parse("0 1 2.5\n1 2\n", opts).unwrap_err();
        assert!(matches!(err, GraphError::Format { line: 2, .. }), "{err}");
    }

    #[test]
    fn empty_file_is_error() {
        assert!(matches!(parse("# nothing\n", LoadOptions::default()), Err(GraphError::Empty)));
        assert!(matches!(parse("", LoadOptions::default()), Err(GraphError::Empty)));
    }

    #[test]
    fn weights_and_labels_from_file() {
        let opts = LoadOptions {
            weight_mode: WeightMode::FromFile,
            label_mode: LabelMode::FromFile,
            ..Default::default()
        };
        let g = parse("0 1 2.5 3\n1 0 0.5 1\n", opts).unwrap();
        assert_eq!(g.weights().unwrap(), &[2.5, 0.5]);
        assert_eq!(g.labels().unwrap(), &[3, 1]);

        let opts = LoadOptions { label_mode: LabelMode::FromFile, ..Default::default() };
        let g = parse("0 1 4\n1 0 2\n", opts).unwrap();
        assert_eq!(g.labels().unwrap(), &[4, 2]);
    }

    #[test]
    fn synthetic_weights_in_range_and_deterministic() {
        let text: String = (0..200).map(|i| format!("{} {}\n", i % 17, (i * 7) % 23)).collect();
        let opts = LoadOptions {
            weight_mode: WeightMode::UniformRandom,
            label_mode: LabelMode::RandomK(5),
            seed: 7,
            ..Default::default()
        };
        let a = parse(&text, opts).unwrap();
        let b = parse(&text, opts).unwrap();
        assert_eq!(a, b);
        assert!(a.weights().unwrap().iter().all(|&w| (1.0..5.0).contains(&w)));
        assert!(a.labels().unwrap().iter().all(|&l| l < 5));
        let c = parse(&text, LoadOptions { seed: 8, ..opts }).unwrap();
        assert_ne!(a.weights(), c.weights());
    }

    #[test]
    fn remap_compacts_ids_in_ascending_order() {
        let opts = LoadOptions { remap_ids: true, ..Default::default() };
        let loaded = parse_edge_list("100 7\n7 5000000000\n", &opts).unwrap();
        assert_eq!(loaded.id_map.as_deref(), Some(&[7, 100, 5_000_000_000][..]));
        assert_eq!(loaded.graph.vertex_count(), 3);
        assert_eq!(loaded.graph.out_neighbors(1), &[0]);
        assert_eq!(loaded.graph.out_neighbors(0), &[2]);
        assert!(parse("0 5000000000\n", LoadOptions::default()).is_err());
    }
}
