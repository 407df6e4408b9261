//! Plain-text edge lists.
//!
//! One record per line. `#` starts a comment. A line with one token declares
//! a vertex, a line with two tokens adds the arc `a -> b`. Vertex ids follow
//! first appearance. Repeated arcs collapse.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Digraph, Labels};
use crate::mdtree::escape;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("input is not valid UTF-8 (byte offset {offset})")]
    InvalidUtf8 { offset: usize },
    #[error("line {line}: self-loop on {label:?}")]
    SelfLoop { line: usize, label: String },
    #[error("line {line}, column {column}: expected one or two tokens, found {found}")]
    TooManyTokens {
        line: usize,
        column: usize,
        found: usize,
    },
    #[error("line {line}, column {column}: invalid character {ch:?}")]
    InvalidToken {
        line: usize,
        column: usize,
        ch: char,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Add both directions for every listed pair.
    pub undirected: bool,
}

pub fn parse_edge_list(text: &str) -> Result<Digraph, ParseError> {
    parse_edge_list_with(text, ParseOptions::default())
}

pub fn parse_edge_list_bytes(bytes: &[u8]) -> Result<Digraph, ParseError> {
    parse_edge_list_bytes_with(bytes, ParseOptions::default())
}

pub fn parse_edge_list_bytes_with(bytes: &[u8], opts: ParseOptions) -> Result<Digraph, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|e| ParseError::InvalidUtf8 {
        offset: e.valid_up_to(),
    })?;
    parse_edge_list_with(text, opts)
}

pub fn parse_edge_list_with(text: &str, opts: ParseOptions) -> Result<Digraph, ParseError> {
    let mut labels = Labels::new();
    let mut arcs = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        if let Some((column, ch)) = body
            .char_indices()
            .find(|&(_, c)| c.is_control() && !c.is_whitespace())
        {
            return Err(ParseError::InvalidToken {
                line,
                column: body[..column].chars().count() + 1,
                ch,
            });
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match tokens[..] {
            [] => {}
            [v] => {
                labels.get_or_insert(v);
            }
            [a, b] => {
                if a == b {
                    return Err(ParseError::SelfLoop {
                        line,
                        label: a.to_owned(),
                    });
                }
                let a = labels.get_or_insert(a);
                let b = labels.get_or_insert(b);
                arcs.insert((a, b));
                if opts.undirected {
                    arcs.insert((b, a));
                }
            }
            _ => {
                let third = tokens[2];
                let column = body[..third.as_ptr() as usize - body.as_ptr() as usize]
                    .chars()
                    .count()
                    + 1;
                return Err(ParseError::TooManyTokens {
                    line,
                    column,
                    found: tokens.len(),
                });
            }
        }
    }
    let g =
        Digraph::from_edges(labels.len(), arcs).expect("parsed arcs are in range and loop-free");
    Ok(g.with_labels(labels).expect("one label per vertex"))
}

/// Writes `g` so that [`parse_edge_list`] reproduces it, ids included.
pub fn write_edge_list(g: &Digraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        let _ = writeln!(out, "{}", g.label(v));
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "{} {}", g.label(a), g.label(b));
    }
    out
}

pub fn to_dot(g: &Digraph) -> String {
    let mut out = String::from("digraph g {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  n{v} [label=\"{}\"];", escape(&g.label(v)));
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}
