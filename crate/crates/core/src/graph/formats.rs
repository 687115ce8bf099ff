//! graph6 and DIMACS edge-list readers and writers.
//!
//! graph6 follows the standard ASCII encoding (header byte(s) for n, then
//! the upper triangle of the adjacency matrix packed 6 bits per byte,
//! offset by 63). DIMACS follows the `p edge n m` / `e u v` convention
//! with 1-indexed vertices.

use super::{GraphError, SimpleGraph, SimpleGraphBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    DimacsEdge,
}

pub fn parse_graph(bytes: &[u8], format: GraphFormat) -> Result<SimpleGraph, GraphError> {
    match format {
        GraphFormat::Graph6 => parse_graph6(bytes),
        GraphFormat::DimacsEdge => parse_dimacs(bytes),
    }
}

pub fn write_graph(g: &SimpleGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Graph6 => write_graph6(g),
        GraphFormat::DimacsEdge => write_dimacs(g),
    }
}

fn malformed(format: &'static str, reason: impl Into<String>) -> GraphError {
    GraphError::Malformed { format, reason: reason.into() }
}

pub fn parse_graph6(bytes: &[u8]) -> Result<SimpleGraph, GraphError> {
    let line = match bytes.iter().position(|&b| b == b'\n') {
        Some(i) => &bytes[..i],
        None => bytes,
    };
    let line = line.strip_suffix(b"\r").unwrap_or(line);
    // Optional ">>graph6<<" prefix.
    let line = line.strip_prefix(b">>graph6<<").unwrap_or(line);
    if line.is_empty() {
        return Err(malformed("graph6", "empty input"));
    }
    for &b in line {
        if !(63..=126).contains(&b) {
            return Err(malformed("graph6", format!("byte {b} outside graph6 range 63..=126")));
        }
    }
    let vals: Vec<u64> = line.iter().map(|&b| (b - 63) as u64).collect();
    let (n, header_len) = if vals[0] < 63 {
        (vals[0] as usize, 1)
    } else if vals.len() >= 4 && vals[1] < 63 {
        (((vals[1] << 12) | (vals[2] << 6) | vals[3]) as usize, 4)
    } else if vals.len() >= 8 {
        let mut n = 0u64;
        for &v in &vals[2..8] {
            n = (n << 6) | v;
        }
        (n as usize, 8)
    } else {
        return Err(malformed("graph6", "truncated size header"));
    };
    let bits_needed = n * n.saturating_sub(1) / 2;
    let body = &vals[header_len..];
    if body.len() * 6 < bits_needed {
        return Err(malformed(
            "graph6",
            format!("need {bits_needed} adjacency bits, got {}", body.len() * 6),
        ));
    }
    let mut b = SimpleGraphBuilder::new(n);
    let mut pos = 0usize;
    for v in 1..n {
        for u in 0..v {
            let bit = body[pos / 6] >> (5 - pos % 6) & 1;
            if bit == 1 {
                b.add_edge(u, v)?;
            }
            pos += 1;
        }
    }
    Ok(b.build())
}

pub fn write_graph6(g: &SimpleGraph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258047 {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    } else {
        out.push(126);
        out.push(126);
        for shift in (0..6).rev() {
            out.push(((n >> (6 * shift)) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn parse_dimacs(bytes: &[u8]) -> Result<SimpleGraph, GraphError> {
    let text = std::str::from_utf8(bytes)
        .map_err(|_| malformed("dimacs", "input is not valid UTF-8"))?;
    let mut builder: Option<SimpleGraphBuilder> = None;
    let mut declared_edges = 0usize;
    let mut seen_edges = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("p") => {
                if builder.is_some() {
                    return Err(malformed("dimacs", "duplicate problem line"));
                }
                let kind = tok.next().unwrap_or("");
                if kind != "edge" && kind != "col" {
                    return Err(malformed(
                        "dimacs",
                        format!("line {}: expected 'p edge n m'", lineno + 1),
                    ));
                }
                let n: usize = tok
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| malformed("dimacs", "bad vertex count in problem line"))?;
                declared_edges = tok
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| malformed("dimacs", "bad edge count in problem line"))?;
                builder = Some(SimpleGraphBuilder::new(n));
            }
            Some("e") => {
                let b = builder
                    .as_mut()
                    .ok_or_else(|| malformed("dimacs", "edge line before problem line"))?;
                let u: usize = tok
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| malformed("dimacs", format!("line {}: bad edge", lineno + 1)))?;
                let v: usize = tok
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| malformed("dimacs", format!("line {}: bad edge", lineno + 1)))?;
                if u == 0 || v == 0 {
                    return Err(malformed("dimacs", format!("line {}: vertices are 1-indexed", lineno + 1)));
                }
                b.add_edge(u - 1, v - 1)?;
                seen_edges += 1;
            }
            Some(other) => {
                return Err(malformed(
                    "dimacs",
                    format!("line {}: unknown record '{other}'", lineno + 1),
                ));
            }
            None => {}
        }
    }
    let b = builder.ok_or_else(|| malformed("dimacs", "missing problem line"))?;
    let g = b.build();
    if seen_edges != declared_edges {
        return Err(malformed(
            "dimacs",
            format!("problem line declares {declared_edges} edges, found {seen_edges}"),
        ));
    }
    Ok(g)
}

pub fn write_dimacs(g: &SimpleGraph) -> String {
    let mut out = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{complete, random_gnp};
    use proptest::prelude::*;

    #[test]
    fn graph6_decodes_k5() {
        let g = parse_graph6(b"D~{").unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 10);
        assert_eq!(g, complete(5));
    }

    #[test]
    fn graph6_encodes_k5() {
        assert_eq!(write_graph6(&complete(5)), "D~{");
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(parse_graph6(b"").is_err());
        assert!(parse_graph6(&[200, 200]).is_err());
        // Header says 5 vertices but adjacency bits are missing.
        assert!(parse_graph6(b"D").is_err());
    }

    #[test]
    fn dimacs_single_edge() {
        let g = parse_dimacs(b"p edge 2 1\ne 1 2\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges(), vec![(0, 1)]);
    }

    #[test]
    fn dimacs_rejects_loop() {
        let err = parse_dimacs(b"p edge 2 1\ne 1 1\n").unwrap_err();
        assert!(matches!(err, GraphError::Loop(0)));
    }

    #[test]
    fn dimacs_rejects_out_of_range_and_bad_header() {
        assert!(matches!(
            parse_dimacs(b"p edge 2 1\ne 1 3\n"),
            Err(GraphError::VertexOutOfRange { .. })
        ));
        assert!(parse_dimacs(b"p vertex 2 1\ne 1 2\n").is_err());
        assert!(parse_dimacs(b"e 1 2\n").is_err());
    }

    proptest! {
        #[test]
        fn round_trip_both_formats(n in 0usize..=64, seed in any::<u64>()) {
            let g = random_gnp(n, 0.35, &mut crate::seed::rng_from(seed));
            prop_assert_eq!(parse_graph6(write_graph6(&g).as_bytes()).unwrap(), g.clone());
            prop_assert_eq!(parse_dimacs(write_dimacs(&g).as_bytes()).unwrap(), g);
        }
    }
}
