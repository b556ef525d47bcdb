//! The `WFG1` binary graph format.
//!
//! Little-endian layout:
//!
//! | field        | type            | count            |
//! |--------------|-----------------|------------------|
//! | magic        | `b"WFG1"`       | 1                |
//! | vertex_count | u64             | 1                |
//! | edge_count   | u64             | 1                |
//! | flags        | u8              | 1 (bit0 weights, bit1 labels) |
//! | offsets      | u64             | vertex_count + 1 |
//! | neighbors    | u32             | edge_count       |
//! | weights      | f64             | edge_count, if bit0 |
//! | labels       | u32             | edge_count, if bit1 |

use std::fs::File;
use std::io::{BufReader, BufWriter, ErrorKind, Read, Write};
use std::path::Path;

use super::{Graph, GraphError};

pub const MAGIC: [u8; 4] = *b"WFG1";
const FLAG_WEIGHTS: u8 = 1;
const FLAG_LABELS: u8 = 2;

pub fn write_binary(graph: &Graph, path: impl AsRef<Path>) -> Result<(), GraphError> {
    let mut w = BufWriter::with_capacity(1 << 20, File::create(path)?);
    write_to(graph, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn read_binary(path: impl AsRef<Path>) -> Result<Graph, GraphError> {
    let mut r = BufReader::with_capacity(1 << 20, File::open(path)?);
    read_from(&mut r)
}

pub(crate) fn write_to(graph: &Graph, w: &mut impl Write) -> Result<(), GraphError> {
    w.write_all(&MAGIC)?;
    w.write_all(&(graph.vertex_count() as u64).to_le_bytes())?;
    w.write_all(&(graph.edge_count() as u64).to_le_bytes())?;
    let mut flags = 0u8;
    if graph.weights().is_some() {
        flags |= FLAG_WEIGHTS;
    }
    if graph.labels().is_some() {
        flags |= FLAG_LABELS;
    }
    w.write_all(&[flags])?;
    for &o in graph.offsets() {
        w.write_all(&o.to_le_bytes())?;
    }
    for &n in graph.neighbors() {
        w.write_all(&n.to_le_bytes())?;
    }
    if let Some(ws) = graph.weights() {
        for &x in ws {
            w.write_all(&x.to_le_bytes())?;
        }
    }
    if let Some(ls) = graph.labels() {
        for &l in ls {
            w.write_all(&l.to_le_bytes())?;
        }
    }
    Ok(())
}

fn read_exact(r: &mut impl Read, buf: &mut [u8], section: &'static str) -> Result<(), GraphError> {
    r.read_exact(buf).map_err(|e| match e.kind() {
        ErrorKind::UnexpectedEof => GraphError::Truncated { section },
        _ => GraphError::Io(e),
    })
}

fn read_section<const W: usize, T>(
    r: &mut impl Read,
    count: usize,
    section: &'static str,
    decode: impl Fn([u8; W]) -> T,
) -> Result<Vec<T>, GraphError> {
    let mut out = Vec::with_capacity(count);
    let mut chunk = vec![0u8; W * 8192];
    let mut left = count;
    while left > 0 {
        let take = left.min(8192);
        let bytes = &mut chunk[..take * W];
        read_exact(r, bytes, section)?;
        out.extend(bytes.chunks_exact(W).map(|c| decode(c.try_into().unwrap())));
        left -= take;
    }
    Ok(out)
}

pub(crate) fn read_from(r: &mut impl Read) -> Result<Graph, GraphError> {
    let mut magic = [0u8; 4];
    read_exact(r, &mut magic, "magic")?;
    if magic != MAGIC {
        return Err(GraphError::BadMagic { found: magic });
    }
    let mut word = [0u8; 8];
    read_exact(r, &mut word, "header")?;
    let vertex_count = u64::from_le_bytes(word);
    read_exact(r, &mut word, "header")?;
    let edge_count = u64::from_le_bytes(word);
    let mut flags = [0u8; 1];
    read_exact(r, &mut flags, "header")?;
    let flags = flags[0];
    if flags & !(FLAG_WEIGHTS | FLAG_LABELS) != 0 {
        return Err(GraphError::SectionMismatch(format!("unknown flag bits {flags:#04x}")));
    }
    if vertex_count >= u32::MAX as u64 {
        return Err(GraphError::SectionMismatch(format!("vertex_count {vertex_count} exceeds 32-bit ids")));
    }
    let n = vertex_count as usize;
    let m = usize::try_from(edge_count)
        .map_err(|_| GraphError::SectionMismatch(format!("edge_count {edge_count} too large")))?;

    let offsets = read_section::<8, _>(r, n + 1, "offsets", u64::from_le_bytes)?;
    if offsets.last() != Some(&edge_count) {
        return Err(GraphError::SectionMismatch("offsets do not end at edge_count".into()));
    }
    let neighbors = read_section::<4, _>(r, m, "neighbors", u32::from_le_bytes)?;
    let weights = if flags & FLAG_WEIGHTS != 0 {
        Some(read_section::<8, _>(r, m, "weights", f64::from_le_bytes)?)
    } else {
        None
    };
    let labels = if flags & FLAG_LABELS != 0 {
        Some(read_section::<4, _>(r, m, "labels", u32::from_le_bytes)?)
    } else {
        None
    };
    let mut probe = [0u8; 1];
    match r.read(&mut probe) {
        Ok(0) => {}
        Ok(_) => return Err(GraphError::SectionMismatch("trailing bytes after the last section".into())),
        Err(e) => return Err(GraphError::Io(e)),
    }
    Graph::from_csr(offsets, neighbors, weights, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bytes_of(g: &Graph) -> Vec<u8> {
        let mut buf = Vec::new();
        write_to(g, &mut buf).unwrap();
        buf
    }

    #[test]
    fn triangle_round_trip_through_file() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.wfg");
        write_binary(&g, &path).unwrap();
        assert_eq!(read_binary(&path).unwrap(), g);
        let raw = std::fs::read(&path).unwrap();
        assert_eq!(&raw[..4], b"WFG1");
        assert_eq!(raw.len(), 4 + 8 + 8 + 1 + 4 * 8 + 3 * 4);
    }

    #[test]
    fn bad_magic() {
        let mut buf = bytes_of(&Graph::from_edges(2, &[(0, 1)]).unwrap());
        buf[..4].copy_from_slice(b"XXXX");
        assert!(matches!(read_from(&mut buf.as_slice()), Err(GraphError::BadMagic { .. })));
    }

    #[test]
    fn truncated_weights_section() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap().with_weights(vec![1.5, 2.5]).unwrap();
        let buf = bytes_of(&g);
        let cut = &buf[..buf.len() - 3];
        assert!(matches!(read_from(&mut &cut[..]), Err(GraphError::Truncated { section: "weights" })));
    }

    #[test]
    fn flag_section_mismatch() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let mut buf = bytes_of(&g);
        buf[20] = 0x80;
        assert!(matches!(read_from(&mut buf.as_slice()), Err(GraphError::SectionMismatch(_))));
        // trailing payload the flags do not announce
        let mut buf = bytes_of(&g);
        buf.extend_from_slice(&[0; 4]);
        assert!(matches!(read_from(&mut buf.as_slice()), Err(GraphError::SectionMismatch(_))));
    }

    proptest! {
        #[test]
        fn round_trip_is_bit_exact(
            edges in proptest::collection::vec((0u32..20, 0u32..20), 1..60),
            seed in any::<u64>(),
            with_w in any::<bool>(),
            with_l in any::<bool>(),
        ) {
            let mut g = Graph::from_edges(20, &edges).unwrap();
            let m = g.edge_count();
            if with_w {
                g = g.with_weights((0..m).map(|i| crate::graph::synthetic_weight(seed, i)).collect()).unwrap();
            }
            if with_l {
                g = g.with_labels((0..m).map(|i| crate::graph::synthetic_label(seed, i, 5)).collect()).unwrap();
            }
            let buf = bytes_of(&g);
            let back = read_from(&mut buf.as_slice()).unwrap();
            prop_assert_eq!(bytes_of(&back), buf);
            prop_assert_eq!(back, g);
        }
    }
}
