//! Plain-text edge lists.
//!
//! ```text
//! n 3
//! 0 1
//! 1 2 -
//! 2 0 +
//! ```
//!
//! The header gives the vertex count. Each edge line is `u v` with an optional sign giving
//! `σ(u, v)`, `+` when omitted. Blank lines and lines starting with `#` are ignored. Repeating an
//! edge is allowed as long as the implied direction agrees.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation, OrientedGraph};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_graph_file(text: &str) -> Result<OrientedGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (header_line, header) = lines.next().ok_or_else(|| parse_error(1, "missing header `n <vertex_count>`"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["n", count] => count
            .parse::<usize>()
            .map_err(|_| parse_error(header_line, format!("invalid vertex count `{count}`")))?,
        _ => return Err(parse_error(header_line, "expected header `n <vertex_count>`")),
    };

    // canonical pair -> (σ on the canonical pair, first line)
    let mut edges: BTreeMap<(usize, usize), (i64, usize)> = BTreeMap::new();
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        let (u, v, sign) = match fields.as_slice() {
            [u, v] => (*u, *v, 1),
            [u, v, "+"] => (*u, *v, 1),
            [u, v, "-"] => (*u, *v, -1),
            [_, _, s] => return Err(parse_error(line, format!("invalid sign `{s}`, expected `+` or `-`"))),
            _ => return Err(parse_error(line, "expected `u v [+|-]`")),
        };
        let vertex = |s: &str| -> Result<usize> {
            let x = s.parse::<usize>().map_err(|_| parse_error(line, format!("invalid vertex `{s}`")))?;
            if x >= n {
                return Err(parse_error(line, format!("vertex {x} out of range for {n} vertices")));
            }
            Ok(x)
        };
        let (u, v) = (vertex(u)?, vertex(v)?);
        if u == v {
            return Err(parse_error(line, format!("loop at vertex {u}")));
        }
        let key = (u.min(v), u.max(v));
        let canonical_sign = if u < v { sign } else { -sign };
        match edges.get(&key) {
            Some(&(s, first)) if s != canonical_sign => {
                return Err(parse_error(
                    line,
                    format!("edge {{{}, {}}} repeats line {first} with the opposite direction", key.0, key.1),
                ));
            }
            Some(_) => {}
            None => {
                edges.insert(key, (canonical_sign, line));
            }
        }
    }
    let pairs: Vec<(usize, usize)> = edges.keys().copied().collect();
    let signs: Vec<i64> = edges.values().map(|&(s, _)| s).collect();
    let graph = Graph::new(n, &pairs)?;
    let orientation = Orientation::from_signs(&graph, &signs)?;
    OrientedGraph::new(graph, orientation)
}

/// Inverse of [`parse_graph_file`]: canonical pairs in order, every sign written out.
pub fn write_graph_file(og: &OrientedGraph) -> String {
    let mut out = format!("n {}\n", og.vertex_count());
    for (e, &(u, v)) in og.graph().edges().iter().enumerate() {
        let s = if og.orientation().sign(e) > 0 { '+' } else { '-' };
        writeln!(out, "{u} {v} {s}").expect("writing to a String");
    }
    out
}
