use std::fmt::Write as _;
use thiserror::Error;

use crate::oracle::{CertificateError, KMatching, KPath, KVertexCover};
use crate::Graph;

/// Parsed certificate text:
///
/// ```text
/// matching:
/// 0 1 2
/// 3 4 5
/// cover:
/// 1 4
/// value: 2
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateFile {
    pub paths: Vec<Vec<usize>>,
    pub cover: Vec<usize>,
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct CertificateFormatError {
    pub line: usize,
    pub message: String,
}

impl CertificateFile {
    /// Checks the paths against `g` and builds the certificate objects.
    pub fn to_certificates(&self, g: &Graph) -> Result<(KMatching, KVertexCover), CertificateError> {
        let paths = self
            .paths
            .iter()
            .map(|p| KPath::new(g, p.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(&v) = self.cover.iter().find(|&&v| v >= g.n()) {
            return Err(CertificateError::BadCoverVertex(v));
        }
        Ok((KMatching::new(paths), KVertexCover::new(self.cover.clone())))
    }
}

pub fn format_certificates(matching: &KMatching, cover: &KVertexCover) -> String {
    let join = |vs: &[usize]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = String::from("matching:\n");
    for p in matching.paths() {
        writeln!(out, "{}", join(p.vertices())).unwrap();
    }
    writeln!(out, "cover:\n{}", join(cover.vertices())).unwrap();
    writeln!(out, "value: {}", matching.len()).unwrap();
    out
}

pub fn parse_certificates(text: &str) -> Result<CertificateFile, CertificateFormatError> {
    let err = |line: usize, message: &str| CertificateFormatError {
        line,
        message: message.to_string(),
    };
    let ids = |line: usize, s: &str| -> Result<Vec<usize>, CertificateFormatError> {
        s.split_whitespace()
            .map(|t| t.parse().map_err(|_| err(line, &format!("bad vertex id {t:?}"))))
            .collect()
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('#'));
    match lines.find(|(_, l)| !l.is_empty()) {
        Some((_, "matching:")) => {}
        Some((i, _)) => return Err(err(i, "expected \"matching:\"")),
        None => return Err(err(1, "empty certificate")),
    }
    let mut paths = Vec::new();
    let mut last = 1;
    loop {
        let Some((i, l)) = lines.next() else {
            return Err(err(last, "missing \"cover:\""));
        };
        last = i;
        if l == "cover:" {
            break;
        }
        if l.is_empty() {
            continue;
        }
        let p = ids(i, l)?;
        paths.push(p);
    }
    let (i, l) = lines.next().ok_or_else(|| err(last, "missing cover line"))?;
    let (cover, value_line) = if l.starts_with("value:") {
        (Vec::new(), Some((i, l)))
    } else {
        (ids(i, l)?, None)
    };
    let (i, l) = match value_line {
        Some(v) => v,
        None => lines
            .find(|(_, l)| !l.is_empty())
            .ok_or_else(|| err(i, "missing \"value:\""))?,
    };
    let value = l
        .strip_prefix("value:")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| err(i, "expected \"value: <int>\""))?;
    if let Some((i, _)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(err(i, "trailing content"));
    }
    Ok(CertificateFile { paths, cover, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{nu_k, tau_k};

    #[test]
    fn round_trip() {
        let g = Graph::path(7);
        let (_, m) = nu_k(&g, 3).unwrap();
        let (_, c) = tau_k(&g, 3).unwrap();
        let text = format_certificates(&m, &c);
        assert_eq!(text, "matching:\n0 1 2\n3 4 5\ncover:\n1 4\nvalue: 2\n");
        let parsed = parse_certificates(&text).unwrap();
        assert_eq!(parsed.value, 2);
        assert_eq!(parsed.to_certificates(&g).unwrap(), (m, c));
    }

    #[test]
    fn empty_cover() {
        let text = format_certificates(&KMatching::new(vec![]), &KVertexCover::new(vec![]));
        assert_eq!(text, "matching:\ncover:\n\nvalue: 0\n");
        let parsed = parse_certificates(&text).unwrap();
        assert!(parsed.paths.is_empty() && parsed.cover.is_empty());
        assert!(parse_certificates("matching:\ncover:\nvalue: 0\n").is_ok());
    }

    #[test]
    fn errors_carry_lines() {
        assert_eq!(parse_certificates("cover:\n").unwrap_err().line, 1);
        assert_eq!(
            parse_certificates("matching:\n0 x 2\ncover:\n1\nvalue: 1\n")
                .unwrap_err()
                .line,
            2
        );
        assert_eq!(
            parse_certificates("matching:\n0 1 2\n").unwrap_err().message,
            "missing \"cover:\""
        );
        assert_eq!(
            parse_certificates("matching:\ncover:\n1\nvalue: one\n")
                .unwrap_err()
                .line,
            4
        );
        assert!(parse_certificates("matching:\ncover:\n\nvalue: 0\nextra\n").is_err());
    }
}
