//! Plain-text graph and coloring formats.
//!
//! Graph: line 1 `n m`, then m lines `u v` with `0 <= u < v < n`. Coloring:
//! line 1 `k`, then one `u v c` line per edge in canonical order. Lines
//! beginning with `#` and blank lines are ignored; output is LF-terminated
//! with edges in canonical order.

use std::fmt::Write as _;

use crate::coloring::EdgeColoring;
use crate::graph::Graph;
use crate::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Data lines with their 1-based line numbers, comments and blanks skipped.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields<const N: usize>(line: usize, text: &str) -> Result<[usize; N]> {
    let mut out = [0usize; N];
    let mut fields = text.split_whitespace();
    for slot in &mut out {
        let f = fields
            .next()
            .ok_or_else(|| parse_err(line, format!("expected {N} fields")))?;
        *slot = f
            .parse()
            .map_err(|_| parse_err(line, format!("invalid integer {f:?}")))?;
    }
    if fields.next().is_some() {
        return Err(parse_err(line, format!("expected {N} fields")));
    }
    Ok(out)
}

/// Parses the graph text format.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let [n, m] = parse_fields(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (eline, etext) = lines
            .next()
            .ok_or_else(|| parse_err(hline, format!("expected {m} edge lines")))?;
        let [u, v] = parse_fields(eline, etext)?;
        if u >= v {
            return Err(parse_err(eline, format!("edge {u} {v} must have u < v")));
        }
        if v >= n {
            return Err(parse_err(
                eline,
                format!("vertex {v} out of range for n = {n}"),
            ));
        }
        if edges.contains(&(u, v)) {
            return Err(parse_err(eline, format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, "trailing content after edge list"));
    }
    Graph::new(n, edges)
}

/// Writes the graph text format with edges in canonical order.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Parses the coloring text format against `g`. Edge lines must match the
/// graph's canonical edge order exactly.
pub fn parse_coloring(text: &str, g: &Graph) -> Result<EdgeColoring> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let [k] = parse_fields(hline, header)?;
    let mut colors = Vec::with_capacity(g.m());
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let (eline, etext) = lines
            .next()
            .ok_or_else(|| parse_err(hline, format!("expected {} coloring lines", g.m())))?;
        let [fu, fv, c] = parse_fields(eline, etext)?;
        if (fu, fv) != (u, v) {
            return Err(parse_err(
                eline,
                format!("expected edge {u} {v} at position {i}, found {fu} {fv}"),
            ));
        }
        if c >= k {
            return Err(parse_err(
                eline,
                format!("color {c} out of range for k = {k}"),
            ));
        }
        colors.push(c);
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, "trailing content after coloring list"));
    }
    EdgeColoring::new(k, colors, (g.n(), g.m()))
}

/// Writes the coloring text format in canonical edge order.
pub fn write_coloring(c: &EdgeColoring, g: &Graph) -> Result<String> {
    c.shape_check(g)?;
    let mut out = String::new();
    let _ = writeln!(out, "{}", c.k());
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let _ = writeln!(out, "{u} {v} {}", c.color(i));
    }
    Ok(out)
}
