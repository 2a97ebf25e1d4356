//! Text formats.
//!
//! `.dg` graph files: the first data line is `n m`, followed by `m` lines
//! `u v` meaning the arc `u -> v`; vertices are 0-indexed. Everything after a
//! `#` on a line is a comment and blank lines are ignored. Canonical output
//! lists arcs sorted by `(tail, head)`.
//!
//! A bundle is several `.dg` documents back to back.
//!
//! `.parts` files hold one part per line as space-separated vertex ids.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{OrientedGraph, Partition, MAX_VERTICES};

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

/// Data lines with their 1-based physical line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn two_numbers(line: usize, body: &str) -> Result<(usize, usize)> {
    let mut it = body.split_whitespace();
    let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
        return parse_err(line, format!("expected two integers, got {body:?}"));
    };
    let a = a.parse::<usize>().or_else(|e| parse_err(line, format!("bad integer {a:?}: {e}")))?;
    let b = b.parse::<usize>().or_else(|e| parse_err(line, format!("bad integer {b:?}: {e}")))?;
    Ok((a, b))
}

fn parse_one<'a, I>(lines: &mut std::iter::Peekable<I>) -> Result<OrientedGraph>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let Some((hl, header)) = lines.next() else {
        return parse_err(1, "missing header line \"n m\"");
    };
    let (n, m) = two_numbers(hl, header)?;
    if n > MAX_VERTICES {
        return parse_err(hl, format!("{n} vertices exceeds the cap of {MAX_VERTICES}"));
    }
    let mut g = OrientedGraph::empty(n)?;
    for k in 0..m {
        let Some((line, body)) = lines.next() else {
            return parse_err(hl, format!("header declares {m} edges but only {k} were given"));
        };
        let (u, v) = two_numbers(line, body)?;
        if let Err(msg) = g.try_add_edge(u, v) {
            return parse_err(line, msg);
        }
    }
    Ok(g)
}

/// Parses a single `.dg` document; trailing data lines are an error.
pub fn parse_graph(text: &str) -> Result<OrientedGraph> {
    let mut lines = data_lines(text).peekable();
    let g = parse_one(&mut lines)?;
    if let Some((line, _)) = lines.next() {
        return parse_err(line, "more edge lines than the header declares");
    }
    Ok(g)
}

/// Canonical `.dg` text of `g`.
pub fn serialize_graph(g: &OrientedGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_bundle(text: &str) -> Result<Vec<OrientedGraph>> {
    let mut lines = data_lines(text).peekable();
    let mut graphs = Vec::new();
    while lines.peek().is_some() {
        graphs.push(parse_one(&mut lines)?);
    }
    Ok(graphs)
}

/// Graphs separated by a `# graph i` comment line.
pub fn serialize_bundle(graphs: &[OrientedGraph]) -> String {
    let mut out = String::new();
    for (i, g) in graphs.iter().enumerate() {
        writeln!(out, "# graph {i}").unwrap();
        out.push_str(&serialize_graph(g));
    }
    out
}

/// Parses a `.parts` file for a ground set `0..n`.
pub fn parse_parts(text: &str, n: usize) -> Result<Partition> {
    let mut parts = Vec::new();
    let mut last = 1;
    for (line, body) in data_lines(text) {
        last = line;
        let part = body
            .split_whitespace()
            .map(|t| t.parse::<usize>().or_else(|e| parse_err(line, format!("bad vertex id {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        parts.push(part);
    }
    Partition::new(n, parts).map_err(|e| match e {
        Error::Usage(msg) => Error::Parse { line: last, msg },
        other => other,
    })
}

pub fn serialize_parts(p: &Partition) -> String {
    let mut out = String::new();
    for part in p.parts() {
        let ids: Vec<String> = part.iter().map(usize::to_string).collect();
        writeln!(out, "{}", ids.join(" ")).unwrap();
    }
    out
}
