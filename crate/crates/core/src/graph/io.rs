//! Line-oriented text formats.
//!
//! Graph file: first line is the vertex count, then one `u v` edge per line.
//! Coloring file: one `u v R` or `u v B` per line. In both, `#` starts a
//! comment and blank lines are ignored.

use std::fmt::Write as _;

use super::{Color, Graph, PartialColoring};
use crate::error::{Error, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_usize(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| parse_err(line, format!("expected a non-negative integer, found `{tok}`")))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (first, header) = lines.next().ok_or_else(|| parse_err(1, "missing vertex count"))?;
    let mut toks = header.split_whitespace();
    let n = parse_usize(first, toks.next().unwrap_or(""))?;
    if toks.next().is_some() {
        return Err(parse_err(first, "vertex count line must hold a single integer"));
    }
    let mut edges = Vec::new();
    for (no, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(parse_err(no, format!("expected `u v`, found `{line}`")));
        }
        let (u, v) = (parse_usize(no, toks[0])?, parse_usize(no, toks[1])?);
        edges.push(((u, v), no));
    }
    // Re-run validation edge by edge so errors carry the offending line.
    let mut seen = std::collections::HashSet::new();
    for &((u, v), no) in &edges {
        if u >= n || v >= n {
            return Err(parse_err(no, format!("vertex out of range for n = {n}")));
        }
        if u == v {
            return Err(parse_err(no, format!("self-loop at vertex {u}")));
        }
        if !seen.insert(super::canonical(u, v)) {
            return Err(parse_err(no, format!("duplicate edge ({u}, {v})")));
        }
    }
    Graph::new(n, edges.into_iter().map(|(e, _)| e))
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Parses a (possibly partial) coloring of the edges of `g`.
pub fn parse_coloring(g: &Graph, text: &str) -> Result<PartialColoring> {
    let mut coloring = PartialColoring::empty(g);
    for (no, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(parse_err(no, format!("expected `u v R|B`, found `{line}`")));
        }
        let (u, v) = (parse_usize(no, toks[0])?, parse_usize(no, toks[1])?);
        let color = match toks[2] {
            "R" | "r" => Color::Red,
            "B" | "b" => Color::Blue,
            other => return Err(parse_err(no, format!("unknown color `{other}`"))),
        };
        let id = g
            .edge_id(u, v)
            .filter(|_| u != v)
            .ok_or_else(|| parse_err(no, format!("({u}, {v}) is not an edge of the graph")))?;
        if coloring.get(id).is_some() {
            return Err(parse_err(no, format!("edge ({u}, {v}) colored twice")));
        }
        coloring.set(id, Some(color));
    }
    Ok(coloring)
}

/// Writes the colored edges in edge-id order; uncolored edges are omitted.
pub fn serialize_coloring(g: &Graph, c: &PartialColoring) -> String {
    let mut out = String::new();
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        if let Some(color) = c.get(id) {
            let _ = writeln!(out, "{u} {v} {}", color.letter());
        }
    }
    out
}
