//! Plain-text graph files.
//!
//! ```text
//! # comment
//! graph 3
//! 0 1
//! 1 2
//! ```
//!
//! The header is `graph <n>` or `digraph <n>`; every further non-comment line
//! is `<tail> <head>`. A `graph` file lists each edge once and is symmetrized
//! on load; loops are written `u u`. Writers emit arcs (edges `u <= v` for
//! graphs) in lexicographic order. Blank lines are ignored.
//!
//! Label sidecars hold `<index> <label>` lines. A template bundle is two graph
//! blocks (`P` then `Q`) followed by `eps1: …`, `eps2: …` and an optional
//! `sym: …` line carrying the symmetry witness.

use std::fmt::Write as _;

use crate::error::{GraphError, Result};
use crate::graph::Digraph;
use crate::pultr::PultrTemplate;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Graph,
    Digraph,
}

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse { line, msg: msg.into() }
}

/// Writes `d` as a `graph` file when its arcs are symmetric, else as a
/// `digraph` file.
pub fn write_text(d: &Digraph) -> String {
    let kind = if d.is_symmetric() { FileKind::Graph } else { FileKind::Digraph };
    write_text_as(d, kind).expect("kind matches symmetry")
}

pub fn write_text_as(d: &Digraph, kind: FileKind) -> Result<String> {
    let mut s = String::new();
    match kind {
        FileKind::Graph => {
            if let Some((a, b)) = d.arcs().find(|&(a, b)| !d.has_arc(b, a)) {
                return Err(GraphError::NotSymmetric(a, b));
            }
            writeln!(s, "graph {}", d.vertex_count()).unwrap();
            for (a, b) in d.arcs().filter(|&(a, b)| a <= b) {
                writeln!(s, "{a} {b}").unwrap();
            }
        }
        FileKind::Digraph => {
            writeln!(s, "digraph {}", d.vertex_count()).unwrap();
            for (a, b) in d.arcs() {
                writeln!(s, "{a} {b}").unwrap();
            }
        }
    }
    Ok(s)
}

/// Lines with their 1-based numbers, comments and blanks removed.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header(line: usize, l: &str) -> Result<Option<(FileKind, usize)>> {
    let mut it = l.split_whitespace();
    let kind = match it.next() {
        Some("graph") => FileKind::Graph,
        Some("digraph") => FileKind::Digraph,
        _ => return Ok(None),
    };
    let n = it
        .next()
        .ok_or_else(|| parse_err(line, "header needs a vertex count"))?
        .parse()
        .map_err(|_| parse_err(line, "vertex count is not a number"))?;
    if it.next().is_some() {
        return Err(parse_err(line, "trailing text after header"));
    }
    Ok(Some((kind, n)))
}

fn parse_arc(line: usize, l: &str, n: usize) -> Result<(usize, usize)> {
    let mut it = l.split_whitespace();
    let mut num = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| parse_err(line, "expected `<tail> <head>`"))?;
        let v: usize = tok.parse().map_err(|_| parse_err(line, format!("not a vertex: {tok:?}")))?;
        if v >= n {
            return Err(parse_err(line, format!("vertex {v} out of range for {n} vertices")));
        }
        Ok(v)
    };
    let (a, b) = (num()?, num()?);
    if it.next().is_some() {
        return Err(parse_err(line, "trailing text after arc"));
    }
    Ok((a, b))
}

fn build(kind: FileKind, n: usize, arcs: Vec<(usize, usize)>) -> Digraph {
    let all: Vec<(usize, usize)> = match kind {
        FileKind::Graph => arcs.into_iter().flat_map(|(a, b)| [(a, b), (b, a)]).collect(),
        FileKind::Digraph => arcs,
    };
    Digraph::new(n, all).expect("arcs checked while parsing")
}

/// Parses one graph file.
pub fn parse_text(text: &str) -> Result<(FileKind, Digraph)> {
    let mut lines = content_lines(text);
    let (line, first) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let (kind, n) = parse_header(line, first)?
        .ok_or_else(|| parse_err(line, "header must be `graph <n>` or `digraph <n>`"))?;
    let arcs = lines.map(|(i, l)| parse_arc(i, l, n)).collect::<Result<Vec<_>>>()?;
    Ok((kind, build(kind, n, arcs)))
}

pub fn write_labels(d: &Digraph) -> String {
    let mut s = String::new();
    for v in 0..d.vertex_count() {
        writeln!(s, "{v} {}", d.label(v)).unwrap();
    }
    s
}

/// Reads a label sidecar for a graph on `n` vertices; every vertex needs
/// exactly one label.
pub fn parse_labels(text: &str, n: usize) -> Result<Vec<String>> {
    let mut labels: Vec<Option<String>> = vec![None; n];
    for (line, l) in content_lines(text) {
        let (idx, label) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let v: usize = idx.parse().map_err(|_| parse_err(line, format!("not an index: {idx:?}")))?;
        if v >= n {
            return Err(parse_err(line, format!("index {v} out of range")));
        }
        if labels[v].replace(label.trim().to_string()).is_some() {
            return Err(parse_err(line, format!("duplicate label for {v}")));
        }
    }
    labels
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or_else(|| parse_err(0, format!("no label for vertex {v}"))))
        .collect()
}

fn map_line(key: &str, m: &[usize]) -> String {
    let parts: Vec<String> = m.iter().map(ToString::to_string).collect();
    format!("{key}: {}\n", parts.join(" "))
}

pub fn write_template(t: &PultrTemplate) -> String {
    let mut s = String::new();
    s.push_str(&write_text(t.p()));
    s.push_str(&write_text(t.q()));
    s.push_str(&map_line("eps1", t.eps1()));
    s.push_str(&map_line("eps2", t.eps2()));
    if let Some(q) = t.symmetry() {
        s.push_str(&map_line("sym", q));
    }
    s
}

/// Parses a template bundle. The result is not validated.
pub fn parse_template(text: &str) -> Result<PultrTemplate> {
    let mut blocks: Vec<(FileKind, usize, Vec<(usize, usize)>)> = Vec::new();
    let mut maps: [Option<Vec<usize>>; 3] = [None, None, None];
    for (line, l) in content_lines(text) {
        if let Some((key, rest)) = l.split_once(':') {
            let slot = match key.trim() {
                "eps1" => 0,
                "eps2" => 1,
                "sym" => 2,
                other => return Err(parse_err(line, format!("unknown key {other:?}"))),
            };
            let vals = rest
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| parse_err(line, format!("not a vertex: {t:?}"))))
                .collect::<Result<Vec<usize>>>()?;
            if maps[slot].replace(vals).is_some() {
                return Err(parse_err(line, format!("duplicate {key} line")));
            }
        } else if let Some((kind, n)) = parse_header(line, l)? {
            if blocks.len() == 2 {
                return Err(parse_err(line, "a template has exactly two graphs"));
            }
            blocks.push((kind, n, Vec::new()));
        } else {
            let (_, n, arcs) = blocks.last_mut().ok_or_else(|| parse_err(line, "arc before any header"))?;
            arcs.push(parse_arc(line, l, *n)?);
        }
    }
    let [eps1, eps2, sym] = maps;
    let eps1 = eps1.ok_or_else(|| parse_err(0, "missing eps1 line"))?;
    let eps2 = eps2.ok_or_else(|| parse_err(0, "missing eps2 line"))?;
    if blocks.len() != 2 {
        return Err(parse_err(0, "a template has exactly two graphs"));
    }
    let mut graphs = blocks.into_iter().map(|(k, n, a)| build(k, n, a));
    let p = graphs.next().expect("two blocks");
    let q = graphs.next().expect("two blocks");
    Ok(PultrTemplate::new(p, q, eps1, eps2, sym))
}
