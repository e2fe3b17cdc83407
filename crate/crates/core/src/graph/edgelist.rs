//! Plain-text edge lists.
//!
//! ```text
//! # comment
//! n m
//! u v      (m lines, 0 <= u < v < n)
//! ```
//! `#` starts a comment anywhere on a line; blank lines are ignored.

use std::fmt::Write as _;
use thiserror::Error;

use super::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("edge list line {line}: {message}")]
pub struct EdgeListError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> EdgeListError {
    EdgeListError {
        line,
        message: message.into(),
    }
}

fn two_numbers(line_no: usize, text: &str) -> Result<(usize, usize), EdgeListError> {
    let mut it = text.split_whitespace();
    let parse = |tok: Option<&str>| -> Result<usize, EdgeListError> {
        let tok = tok.ok_or_else(|| err(line_no, "expected two integers"))?;
        tok.parse()
            .map_err(|_| err(line_no, format!("not a non-negative integer: {tok:?}")))
    };
    let a = parse(it.next())?;
    let b = parse(it.next())?;
    if let Some(extra) = it.next() {
        return Err(err(line_no, format!("unexpected token {extra:?}")));
    }
    Ok((a, b))
}

pub fn parse(text: &str) -> Result<Graph, EdgeListError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (a, b) = two_numbers(line_no, content)?;
        match header {
            None => header = Some((a, b)),
            Some((n, m)) => {
                if edges.len() == m {
                    return Err(err(line_no, format!("more than the declared {m} edges")));
                }
                if !(a < b && b < n) {
                    return Err(err(line_no, format!("edge {a} {b} violates 0 <= u < v < {n}")));
                }
                edges.push((a, b));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| err(last_line.max(1), "missing `n m` header"))?;
    if edges.len() != m {
        return Err(err(last_line, format!("declared {m} edges, found {}", edges.len())));
    }
    Graph::new(n, edges).map_err(|e| err(last_line, e.to_string()))
}

pub fn format(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
