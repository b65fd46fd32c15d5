//! The `p plg` edge-list format.
//!
//! ```text
//! p plg <vertex_count> <distinct_edge_count>
//! e <u> <v> <multiplicity>      (u <= v, one line per distinct edge)
//! l <v> <tag>                   (optional vertex label)
//! ```
//!
//! Writing is canonical: header, edges in ascending `(u, v)` order, then
//! labels in ascending vertex order, each line newline-terminated.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{PlgError, Result};
use crate::graph::MultiGraph;

pub fn write_graph(g: &MultiGraph) -> String {
    let mut out = String::new();
    writeln!(out, "p plg {} {}", g.vertex_count(), g.distinct_edge_count()).unwrap();
    for (u, v, m) in g.edges() {
        writeln!(out, "e {u} {v} {m}").unwrap();
    }
    for (v, tag) in g.labels() {
        writeln!(out, "l {v} {tag}").unwrap();
    }
    out
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| PlgError::parse(line, format!("missing {what}")))?;
    if tok.starts_with('+') {
        return Err(PlgError::parse(line, format!("invalid {what} {tok:?}")));
    }
    tok.parse()
        .map_err(|_| PlgError::parse(line, format!("invalid {what} {tok:?}")))
}

fn no_more(mut toks: std::str::SplitAsciiWhitespace<'_>, line: usize) -> Result<()> {
    match toks.next() {
        Some(extra) => Err(PlgError::parse(line, format!("unexpected token {extra:?}"))),
        None => Ok(()),
    }
}

pub fn read_graph(text: &str) -> Result<MultiGraph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (first, header) = lines
        .next()
        .ok_or_else(|| PlgError::parse(1, "empty input, expected header"))?;
    let mut toks = header.split_ascii_whitespace();
    if toks.next() != Some("p") || toks.next() != Some("plg") {
        return Err(PlgError::parse(first, "expected header \"p plg <n> <m>\""));
    }
    let n: usize = parse_num(toks.next(), first, "vertex count")?;
    let m: usize = parse_num(toks.next(), first, "edge count")?;
    no_more(toks, first)?;

    let mut g = MultiGraph::new(n);
    let mut seen = BTreeSet::new();
    let mut last_line = first;
    for (ln, line) in lines {
        last_line = ln;
        let mut toks = line.split_ascii_whitespace();
        match toks.next() {
            Some("e") => {
                let u: usize = parse_num(toks.next(), ln, "endpoint")?;
                let v: usize = parse_num(toks.next(), ln, "endpoint")?;
                let mult: i64 = parse_num(toks.next(), ln, "multiplicity")?;
                no_more(toks, ln)?;
                if u >= n || v >= n {
                    return Err(PlgError::parse(
                        ln,
                        format!("endpoint out of range for {n} vertices"),
                    ));
                }
                if mult <= 0 {
                    return Err(PlgError::parse(ln, "multiplicity must be positive"));
                }
                if u > v {
                    return Err(PlgError::parse(ln, "edge endpoints must satisfy u <= v"));
                }
                if !seen.insert((u, v)) {
                    return Err(PlgError::parse(ln, format!("duplicate edge {u} {v}")));
                }
                g.add_edge(u, v, mult as u64)
                    .map_err(|e| PlgError::parse(ln, e.to_string()))?;
            }
            Some("l") => {
                let v: usize = parse_num(toks.next(), ln, "vertex")?;
                let tag = toks
                    .next()
                    .ok_or_else(|| PlgError::parse(ln, "missing label tag"))?;
                no_more(toks, ln)?;
                if v >= n {
                    return Err(PlgError::parse(
                        ln,
                        format!("label vertex out of range for {n} vertices"),
                    ));
                }
                if g.label(v).is_some() {
                    return Err(PlgError::parse(ln, format!("duplicate label for vertex {v}")));
                }
                g.set_label(v, tag)
                    .map_err(|e| PlgError::parse(ln, e.to_string()))?;
            }
            _ => return Err(PlgError::parse(ln, format!("malformed line {line:?}"))),
        }
    }
    if seen.len() != m {
        return Err(PlgError::parse(
            last_line + 1,
            format!("header declares {m} edges, found {}", seen.len()),
        ));
    }
    Ok(g)
}
