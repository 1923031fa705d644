//! graph6 short-form encoding: one printable line per graph.
//!
//! Layout: one size byte `63 + n` (so `n <= 62`), then the upper triangle of
//! the adjacency matrix column by column (`(0,1), (0,2), (1,2), (0,3), ...`),
//! packed big-endian into 6-bit groups, each group offset by 63. Padding
//! bits must be zero, which makes the encoding canonical for a fixed vertex
//! order.

use crate::error::{Error, Result};
use crate::graph::Graph;

const OFFSET: u8 = 63;
const MAX_SHORT: usize = 62;

/// Encode under the graph's fixed vertex order. Vertex names are not part of
/// the format; decoding yields vertices named `"0".."n-1"`.
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.vertex_count();
    if n > MAX_SHORT {
        return Err(Error::TooManyForGraph6(n));
    }
    let mut out = vec![OFFSET + n as u8];
    let mut group = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            group <<= 1;
            if g.is_adjacent(i, j) {
                group |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(OFFSET + group);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        group <<= 6 - filled;
        out.push(OFFSET + group);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Decode one short-form graph6 line.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    parse_graph6_at(line, 1)
}

fn parse_graph6_at(line: &str, line_no: usize) -> Result<Graph> {
    let parse_err = |msg: String| Error::Parse { line: line_no, msg };
    let bytes = line.trim().as_bytes();
    if bytes.is_empty() {
        return Err(parse_err("empty graph6 line".into()));
    }
    if bytes[0] == b'~' {
        return Err(parse_err(
            "long-form graph6 (more than 62 vertices) is not supported".into(),
        ));
    }
    for &b in bytes {
        if !(OFFSET..=126).contains(&b) {
            return Err(parse_err(format!(
                "invalid graph6 byte {b} (must be 63..=126)"
            )));
        }
    }
    let n = (bytes[0] - OFFSET) as usize;
    let bit_count = n * n.saturating_sub(1) / 2;
    let expected_groups = bit_count.div_ceil(6);
    let groups = &bytes[1..];
    if groups.len() < expected_groups {
        return Err(parse_err(format!(
            "truncated bit vector: need {expected_groups} data bytes for {n} vertices, found {}",
            groups.len()
        )));
    }
    if groups.len() > expected_groups {
        return Err(parse_err(format!(
            "trailing bytes: need {expected_groups} data bytes for {n} vertices, found {}",
            groups.len()
        )));
    }
    let bit = |k: usize| (groups[k / 6] - OFFSET) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    for pad in bit_count..expected_groups * 6 {
        if bit(pad) {
            return Err(parse_err("nonzero padding bits".into()));
        }
    }
    Ok(Graph::from_indexed_edges(n, edges))
}

/// Decode a stream of graph6 lines (blank lines and `#` comments skipped),
/// reporting errors with their line number.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    let mut graphs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        graphs.push(parse_graph6_at(trimmed, idx + 1)?);
    }
    Ok(graphs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_the_triangle() {
        let g = parse_graph6("Bw").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.name(0), "0");
    }

    #[test]
    fn decodes_two_isolated_vertices() {
        let g = parse_graph6("A?").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn encodes_known_small_graphs() {
        assert_eq!(to_graph6(&Graph::complete(3)).unwrap(), "Bw");
        assert_eq!(to_graph6(&Graph::complete(1)).unwrap(), "@");
        assert_eq!(to_graph6(&Graph::from_indexed_edges(2, [])).unwrap(), "A?");
    }

    #[test]
    fn round_trips_generated_graphs() {
        for g in [
            Graph::path(7),
            Graph::cycle(5),
            Graph::complete(6),
            Graph::star(4),
            Graph::from_indexed_edges(0, []),
        ] {
            let enc = to_graph6(&g).unwrap();
            let back = parse_graph6(&enc).unwrap();
            assert_eq!(to_graph6(&back).unwrap(), enc);
            assert_eq!(back.edge_count(), g.edge_count());
            assert_eq!(back.vertex_count(), g.vertex_count());
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_graph6("B "), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph6("B\u{1}w"), Err(Error::Parse { .. })));
        // truncated: K4 needs one data byte
        assert!(matches!(parse_graph6("C"), Err(Error::Parse { .. })));
        // trailing garbage
        assert!(matches!(parse_graph6("Bww"), Err(Error::Parse { .. })));
        // nonzero padding: n=2 has one significant bit, five pad bits
        assert!(matches!(parse_graph6("A\u{7e}"), Err(Error::Parse { .. })));
        // long form marker
        assert!(matches!(parse_graph6("~??"), Err(Error::Parse { .. })));
    }

    #[test]
    fn rejects_oversized_graphs() {
        let g = Graph::from_indexed_edges(63, []);
        assert_eq!(to_graph6(&g), Err(Error::TooManyForGraph6(63)));
    }

    #[test]
    fn stream_parsing_skips_comments_and_reports_lines() {
        let graphs = parse_graph6_lines("# header\nBw\n\nA?\n").unwrap();
        assert_eq!(graphs.len(), 2);
        let err = parse_graph6_lines("Bw\nB\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
