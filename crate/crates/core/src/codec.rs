//! Text formats: graph6, plain edge lists, DOT emission, and the one-line
//! ordering format.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("empty graph6 string")]
    EmptyGraph6,
    #[error("graph6 orders above 62 are not supported")]
    Graph6OrderTooLarge,
    #[error("invalid graph6 byte {byte:#x} at position {pos}")]
    InvalidGraph6Byte { byte: u8, pos: usize },
    #[error("graph6 string has wrong length: expected {expected} data bytes, got {got}")]
    Graph6Length { expected: usize, got: usize },
    #[error("edge list line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error("empty input")]
    EmptyInput,
    #[error("ordering: {0}")]
    Ordering(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

// ---------------------------------------------------------------------------
// graph6
// ---------------------------------------------------------------------------

/// Encodes to graph6. Live vertices are written in ascending id order, so for
/// graphs with a contiguous vertex set this round-trips exactly; graphs with
/// holes in the id space are compacted.
pub fn to_graph6(g: &Graph) -> Result<String, CodecError> {
    let verts: Vec<usize> = g.vertices().iter().collect();
    let n = verts.len();
    if n > 62 {
        return Err(CodecError::Graph6OrderTooLarge);
    }
    let mut out = String::new();
    out.push((n as u8 + 63) as char);
    // Upper triangle, column by column: bit (i, j) for j in 1..n, i in 0..j.
    let mut bits: Vec<bool> = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(verts[i], verts[j]));
        }
    }
    while !bits.len().is_multiple_of(6) {
        bits.push(false);
    }
    for chunk in bits.chunks(6) {
        let mut val = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                val |= 1 << (5 - k);
            }
        }
        out.push((val + 63) as char);
    }
    Ok(out)
}

/// Decodes a graph6 string (optionally prefixed with `>>graph6<<`).
pub fn from_graph6(text: &str) -> Result<Graph, CodecError> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(CodecError::EmptyGraph6);
    }
    if bytes[0] < 63 || bytes[0] > 126 {
        return Err(CodecError::InvalidGraph6Byte { byte: bytes[0], pos: 0 });
    }
    if bytes[0] == 126 {
        // Multi-byte order field: n > 62.
        return Err(CodecError::Graph6OrderTooLarge);
    }
    let n = (bytes[0] - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    let data = &bytes[1..];
    if data.len() != expected {
        return Err(CodecError::Graph6Length { expected, got: data.len() });
    }
    let mut edges = Vec::new();
    let mut idx = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = data[idx / 6];
            if !(63..=126).contains(&byte) {
                return Err(CodecError::InvalidGraph6Byte { byte, pos: idx / 6 + 1 });
            }
            let bit = (byte - 63) >> (5 - idx % 6) & 1;
            if bit == 1 {
                edges.push((i, j));
            }
            idx += 1;
            if idx == nbits {
                break 'outer;
            }
        }
    }
    // Padding bits must be zero.
    if !nbits.is_multiple_of(6) {
        let last = data[expected - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(CodecError::InvalidGraph6Byte { byte: data[expected - 1], pos: expected });
        }
    }
    Ok(Graph::build(n, edges)?)
}

// ---------------------------------------------------------------------------
// edge list
// ---------------------------------------------------------------------------

/// Parses the plain edge-list format: one `u v` pair per line, `#` comments,
/// and an optional leading `n m` header line. A two-integer first line counts
/// as a header exactly when taking it as `n m` is consistent with the rest of
/// the input (m remaining lines, endpoints below n).
pub fn from_edge_list(text: &str) -> Result<Graph, CodecError> {
    let mut rows: Vec<(usize, Vec<usize>)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        let nums = nums.map_err(|e| CodecError::EdgeList {
            line: lineno + 1,
            msg: format!("expected integers: {e}"),
        })?;
        if nums.len() != 2 {
            return Err(CodecError::EdgeList {
                line: lineno + 1,
                msg: format!("expected two integers, got {}", nums.len()),
            });
        }
        rows.push((lineno + 1, nums));
    }
    if rows.is_empty() {
        return Err(CodecError::EmptyInput);
    }

    let (n0, m0) = (rows[0].1[0], rows[0].1[1]);
    let header_consistent = rows.len() - 1 == m0
        && rows[1..].iter().all(|(_, r)| r[0] < n0 && r[1] < n0)
        && rows[1..].iter().all(|(_, r)| r[0] != r[1]);
    let (n, edge_rows) = if header_consistent {
        (n0, &rows[1..])
    } else {
        let max = rows.iter().map(|(_, r)| r[0].max(r[1])).max().unwrap();
        (max + 1, &rows[..])
    };

    let mut edges = Vec::with_capacity(edge_rows.len());
    for (lineno, r) in edge_rows {
        if r[0] == r[1] {
            return Err(CodecError::EdgeList {
                line: *lineno,
                msg: format!("self-loop at vertex {}", r[0]),
            });
        }
        edges.push((r[0], r[1]));
    }
    Ok(Graph::build(n, edges)?)
}

/// Emits the edge-list format with an `n m` header. Vertex ids are written
/// as-is, so graphs with holes in the id space stay aligned with their source.
pub fn to_edge_list(g: &Graph) -> String {
    let n = g.vertices().iter().max().map_or(0, |v| v + 1);
    let mut out = format!("{} {}\n", n, g.size());
    for e in g.edges() {
        let (u, v) = e.endpoints();
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

// ---------------------------------------------------------------------------
// DOT
// ---------------------------------------------------------------------------

/// Emits an undirected DOT graph for visualization.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph g {\n");
    for v in g.vertices().iter() {
        out.push_str(&format!("  {v};\n"));
    }
    for e in g.edges() {
        let (u, v) = e.endpoints();
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

// ---------------------------------------------------------------------------
// orderings
// ---------------------------------------------------------------------------

/// Parses a whitespace-separated list of vertex ids (one line).
pub fn parse_ordering(text: &str) -> Result<Vec<usize>, CodecError> {
    let ids: Result<Vec<usize>, _> = text.split_whitespace().map(str::parse).collect();
    let ids = ids.map_err(|e| CodecError::Ordering(format!("expected integers: {e}")))?;
    if ids.is_empty() {
        return Err(CodecError::Ordering("empty ordering".into()));
    }
    Ok(ids)
}

pub fn format_ordering(order: &[usize]) -> String {
    order.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    #[test]
    fn k1_encodes_to_at_sign() {
        let g = Graph::build(1, []).unwrap();
        assert_eq!(to_graph6(&g).unwrap(), "@");
        assert_eq!(from_graph6("@").unwrap().order(), 1);
    }

    #[test]
    fn empty_graph6_rejected() {
        assert_eq!(from_graph6("").unwrap_err(), CodecError::EmptyGraph6);
    }

    #[test]
    fn truncated_graph6_rejected() {
        // n=5 needs two data bytes.
        assert!(matches!(from_graph6("D"), Err(CodecError::Graph6Length { .. })));
    }

    #[test]
    fn known_graph6_values() {
        // The worked example from the format definition: n=5 with edges
        // 0-2, 0-4, 1-3, 3-4 encodes to "DQc".
        let g = Graph::build(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g).unwrap(), "DQc");
        assert_eq!(from_graph6("DQc").unwrap(), g);

        let p4 = Graph::build(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(to_graph6(&p4).unwrap(), "Ch");

        let c4 = Graph::build(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(to_graph6(&c4).unwrap(), "Cl");

        let k4 = Graph::build(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(to_graph6(&k4).unwrap(), "C~");
        assert_eq!(from_graph6("C~").unwrap(), k4);
    }

    #[test]
    fn orders_above_62_are_rejected() {
        let g = Graph::build(63, []).unwrap();
        assert_eq!(to_graph6(&g).unwrap_err(), CodecError::Graph6OrderTooLarge);
        // A multi-byte order field (first byte 126) is out of scope.
        assert_eq!(from_graph6("~??").unwrap_err(), CodecError::Graph6OrderTooLarge);
    }

    #[test]
    fn header_prefix_accepted() {
        let g = from_graph6(">>graph6<<C~").unwrap();
        assert_eq!(g.size(), 6);
    }

    #[test]
    fn edge_list_with_header() {
        let g = from_edge_list("# a comment\n4 3\n0 1\n1 2 # trailing\n2 3\n").unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.size(), 3);
    }

    #[test]
    fn edge_list_without_header() {
        let g = from_edge_list("0 1\n1 2\n2 3\n").unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.size(), 3);
    }

    #[test]
    fn edge_list_round_trip_keeps_isolated_vertices() {
        let g = Graph::build(5, [(0, 1)]).unwrap();
        let h = from_edge_list(&to_edge_list(&g)).unwrap();
        assert_eq!(h.order(), 5);
        assert_eq!(h.size(), 1);
    }

    #[test]
    fn edge_list_rejects_garbage() {
        assert!(matches!(from_edge_list("0 x\n"), Err(CodecError::EdgeList { line: 1, .. })));
        assert!(matches!(from_edge_list(""), Err(CodecError::EmptyInput)));
    }

    #[test]
    fn dot_output_shape() {
        let g = Graph::build(3, [(0, 2)]).unwrap();
        let dot = to_dot(&g);
        assert!(dot.starts_with("graph g {"));
        assert!(dot.contains("0 -- 2;"));
        assert!(dot.contains("  1;\n"));
    }

    #[test]
    fn ordering_round_trip() {
        let order = vec![3, 0, 2, 1];
        assert_eq!(parse_ordering(&format_ordering(&order)).unwrap(), order);
    }

    #[test]
    fn graph6_round_trip_on_eliminated_graph_compacts() {
        let g = Graph::build(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let (h, _) = g.eliminate(1).unwrap();
        // Vertices {0, 2, 3} form a triangle; encoding compacts to K3.
        assert_eq!(to_graph6(&h).unwrap(), "Bw");
        let k3 = from_graph6("Bw").unwrap();
        assert_eq!(k3.vertices(), VertexSet::first_n(3));
        assert!(k3.is_clique(k3.vertices()));
    }
}
