//! Whitespace-separated edge lists: one `u v` pair per line, 0-based.
//! Blank lines and `#` comments are skipped; the vertex count is one more
//! than the largest id mentioned.

use std::fmt::Write;

use super::{Graph, GraphBuilder, GraphError, Vertex};

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut pairs: Vec<(Vertex, Vertex)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |reason: String| GraphError::EdgeList {
            line: idx + 1,
            reason,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(bad(format!(
                "expected two vertex ids, found {}",
                fields.len()
            )));
        }
        let parse = |s: &str| {
            s.parse::<Vertex>()
                .map_err(|_| bad(format!("`{s}` is not a vertex id")))
        };
        pairs.push((parse(fields[0])?, parse(fields[1])?));
    }
    let n = pairs.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    let mut b = GraphBuilder::new(n);
    for (idx, &(u, v)) in pairs.iter().enumerate() {
        b.add_edge(u, v).map_err(|e| GraphError::EdgeList {
            line: idx + 1,
            reason: e.to_string(),
        })?;
    }
    Ok(b.build())
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for e in g.edges() {
        writeln!(out, "{} {}", e.u(), e.v()).unwrap();
    }
    out
}
