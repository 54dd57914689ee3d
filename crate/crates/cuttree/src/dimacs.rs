//! The `p ghct` text format for graphs and Gomory-Hu trees.
//!
//! ```text
//! c optional comments
//! p ghct <n> <m>
//! e <u> <v> <w>
//! ```
//!
//! Labels are `1..=n`, weights are non-negative integers, and exactly `m` edge lines
//! follow the header.

use std::fmt::Write as _;

use cuttree_core::{GhTree, Graph, Node, Weight};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {kind}")]
    At { line: usize, kind: LineError },
    #[error("missing `p ghct <n> <m>` header")]
    MissingHeader,
    #[error("header announces {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("{0}")]
    Invalid(cuttree_core::Error),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LineError {
    #[error("malformed header, expected `p ghct <n> <m>`")]
    Header,
    #[error("second header")]
    DuplicateHeader,
    #[error("edge before header")]
    EdgeBeforeHeader,
    #[error("malformed edge, expected `e <u> <v> <w>`")]
    Edge,
    #[error("label {label} outside 1..={n}")]
    Label { label: String, n: u32 },
    #[error("negative weight {0}")]
    NegativeWeight(String),
    #[error("self-loop on {0}")]
    SelfLoop(u32),
    #[error("unknown record `{0}`")]
    Record(String),
}

/// Header size plus edges in file order.
#[derive(Debug)]
struct Records {
    n: u32,
    edges: Vec<(Node, Node, Weight)>,
}

fn at(line: usize, kind: LineError) -> ParseError {
    ParseError::At { line, kind }
}

fn parse_records(text: &str) -> Result<Records, ParseError> {
    let mut header: Option<(u32, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut fields = raw.split_whitespace();
        match fields.next() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(at(line, LineError::DuplicateHeader));
                }
                let rest: Vec<&str> = fields.collect();
                let [kind, n, m] = rest[..] else { return Err(at(line, LineError::Header)) };
                let (Ok(n), Ok(m)) = (n.parse::<u32>(), m.parse::<usize>()) else {
                    return Err(at(line, LineError::Header));
                };
                if kind != "ghct" || n == 0 {
                    return Err(at(line, LineError::Header));
                }
                header = Some((n, m));
            }
            Some("e") => {
                let Some((n, _)) = header else { return Err(at(line, LineError::EdgeBeforeHeader)) };
                let rest: Vec<&str> = fields.collect();
                let [u, v, w] = rest[..] else { return Err(at(line, LineError::Edge)) };
                let label = |s: &str| match s.parse::<u32>() {
                    Ok(x) if (1..=n).contains(&x) => Ok(Node(x)),
                    Ok(_) => Err(at(line, LineError::Label { label: s.to_owned(), n })),
                    Err(_) if s.parse::<i64>().is_ok() => Err(at(line, LineError::Label { label: s.to_owned(), n })),
                    Err(_) => Err(at(line, LineError::Edge)),
                };
                let (u, v) = (label(u)?, label(v)?);
                if w.starts_with('-') && w[1..].parse::<Weight>().is_ok() {
                    return Err(at(line, LineError::NegativeWeight(w.to_owned())));
                }
                let w: Weight = w.parse().map_err(|_| at(line, LineError::Edge))?;
                if u == v {
                    return Err(at(line, LineError::SelfLoop(u.0)));
                }
                edges.push((u, v, w));
            }
            Some(other) => return Err(at(line, LineError::Record(other.to_owned()))),
        }
    }
    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if edges.len() != m {
        return Err(ParseError::EdgeCount { expected: m, found: edges.len() });
    }
    Ok(Records { n, edges })
}

/// Parses a graph; parallel edges merge by adding weights.
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let r = parse_records(text)?;
    Graph::with_node_count(r.n, r.edges).map_err(ParseError::Invalid)
}

/// Canonical form: header, then edges sorted by endpoints. Assumes labels `1..=n`.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p ghct {} {}\n", g.node_count(), g.edge_count());
    for (u, v, w) in g.edges() {
        writeln!(out, "e {} {} {}", u.0, v.0, w).expect("writing to a String");
    }
    out
}

/// Parses a tree in the graph format; the edges must form a spanning tree of `1..=n`.
pub fn parse_tree(text: &str) -> Result<GhTree, ParseError> {
    let r = parse_records(text)?;
    GhTree::new((1..=r.n).map(Node).collect(), r.edges).map_err(ParseError::Invalid)
}

/// A tree in the graph format, preceded by a comment naming how it was built.
pub fn write_tree(t: &GhTree, method: &str, seed: u64) -> String {
    let mut out = format!("c method={method} seed={seed}\np ghct {} {}\n", t.nodes().len(), t.edges().len());
    for &(u, v, w) in t.edges() {
        writeln!(out, "e {} {} {}", u.0, v.0, w).expect("writing to a String");
    }
    out
}
