//! graph6 encoding: a size prefix (`63 + n` for `n <= 62`, otherwise `126`
//! followed by three 6-bit groups), then the upper triangle of the adjacency
//! matrix in column order packed into 6-bit groups, each offset by 63.

use kpath_core::Graph;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph6 line {line}: {message}")]
pub struct Graph6Error {
    pub line: usize,
    pub message: String,
}

const MAX_N: usize = 258_047;

fn parse_with_line(text: &str, line: usize) -> Result<Graph, Graph6Error> {
    let err = |message: String| Graph6Error { line, message };
    let bytes = text.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(err(format!("byte {b} outside 63..=126")));
    }
    let (n, body) = match bytes.first() {
        None => return Err(err("empty line".into())),
        Some(&126) => {
            if bytes.get(1) == Some(&126) {
                return Err(err("graphs with more than 258047 vertices are not supported".into()));
            }
            if bytes.len() < 4 {
                return Err(err("truncated size prefix".into()));
            }
            let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            if n < 63 {
                return Err(err(format!("long size prefix used for n = {n}")));
            }
            (n, &bytes[4..])
        }
        Some(&b) => ((b - 63) as usize, &bytes[1..]),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() != need {
        return Err(err(format!(
            "expected {need} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let bit = |i: usize| (body[i / 6] - 63) >> (5 - i % 6) & 1 == 1;
    if (bits..need * 6).any(bit) {
        return Err(err("padding bits are not zero".into()));
    }
    let mut edges = Vec::new();
    let mut i = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(i) {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::new(n, edges).map_err(|e| err(e.to_string()))
}

/// One graph from a single graph6 string (no newline).
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    parse_with_line(text.trim_end_matches(['\r', '\n']), 1)
}

/// Every non-empty line of `text`; an optional `>>graph6<<` header is skipped.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>, Graph6Error> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.strip_prefix(">>graph6<<").unwrap_or(raw).trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        out.push(parse_with_line(line, i + 1)?);
    }
    Ok(out)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= MAX_N);
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(126);
        out.extend([12, 6, 0].iter().map(|s| 63 + (n >> s & 63) as u8));
    }
    let mut group = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            group = group << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + group);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (group << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_strings() {
        // Standard examples: K4 is "C~", the path 0-1-2 is "Bg", C5 is "Dhc".
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
        assert_eq!(parse_graph6("C~").unwrap(), Graph::complete(4));
        assert_eq!(to_graph6(&Graph::path(3)), "Bg");
        assert_eq!(parse_graph6("Bg").unwrap(), Graph::path(3));
        assert_eq!(to_graph6(&Graph::cycle(5)), "Dhc");
        assert_eq!(to_graph6(&Graph::empty(1)), "@");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
    }

    #[test]
    fn round_trip_large() {
        let g = Graph::cycle(70);
        let s = to_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 69]);
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_graph6_lines("C~\n\nC}\nCx\nD\n").unwrap_err();
        assert_eq!(e.line, 5);
        let e = parse_graph6_lines("C~\nC\x7f\n").unwrap_err();
        assert_eq!(e.line, 2);
        // padding bit set: n = 2 has one data bit
        assert!(parse_graph6("A`").is_err());
        assert!(parse_graph6("A_").is_ok());
        assert_eq!(parse_graph6_lines(">>graph6<<C~\n").unwrap(), vec![Graph::complete(4)]);
    }
}
