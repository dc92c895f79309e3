//! Matrix file formats.
//!
//! Text form: `n` on the first line, then `n` lines of `n` whitespace
//! separated rationals (`p`, `-p` or `p/q`, `q > 0`). Document form: a JSON
//! object `{"n": 2, "rows": [["1", "2"], ["-1", "5"]]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub n: usize,
    pub rows: Vec<Vec<String>>,
}

impl From<&RationalMatrix> for MatrixDocument {
    fn from(m: &RationalMatrix) -> Self {
        Self {
            n: m.n(),
            rows: m.rows().map(|r| r.iter().map(rational::render).collect()).collect(),
        }
    }
}

impl TryFrom<MatrixDocument> for RationalMatrix {
    type Error = Error;

    fn try_from(doc: MatrixDocument) -> Result<Self> {
        if doc.rows.len() != doc.n {
            return Err(Error::EntryCount { n: doc.n, expected: doc.n, got: doc.rows.len() });
        }
        let rows = doc
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != doc.n {
                    return Err(Error::Parse {
                        line: i + 1,
                        column: 1,
                        message: format!("row {} has {} entries, expected {}", i + 1, row.len(), doc.n),
                    });
                }
                row.iter()
                    .enumerate()
                    .map(|(j, s)| rational::parse_token(s, i + 1, j + 1))
                    .collect::<Result<Vec<Rational>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        RationalMatrix::from_rows(rows)
    }
}

pub fn render_text(m: &RationalMatrix) -> String {
    m.to_string()
}

pub fn render_document(m: &RationalMatrix) -> String {
    serde_json::to_string(&MatrixDocument::from(m)).expect("plain strings serialize")
}

pub fn parse_document(src: &str) -> Result<RationalMatrix> {
    let doc: MatrixDocument = serde_json::from_str(src).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    doc.try_into()
}

pub fn parse_text(src: &str) -> Result<RationalMatrix> {
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let (first_no, first) = lines.next().ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "empty input".into(),
    })?;
    let n: usize = first.trim().parse().map_err(|_| Error::Parse {
        line: first_no,
        column: first.len() - first.trim_start().len() + 1,
        message: format!("expected the dimension, found `{}`", first.trim()),
    })?;
    if n == 0 {
        return Err(Error::Parse { line: first_no, column: 1, message: "dimension must be at least 1".into() });
    }
    let mut rows = Vec::with_capacity(n);
    for (line_no, line) in lines {
        if rows.len() == n {
            return Err(Error::Parse { line: line_no, column: 1, message: format!("more than {n} rows") });
        }
        let row = tokens(line)
            .map(|(col, tok)| rational::parse_token(tok, line_no, col))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::Parse {
                line: line_no,
                column: 1,
                message: format!("expected {n} entries, found {}", row.len()),
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Parse {
            line: src.lines().count().max(1),
            column: 1,
            message: format!("expected {n} rows, found {}", rows.len()),
        });
    }
    RationalMatrix::from_rows(rows)
}

/// Whitespace separated tokens with their 1-based columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let skipped = rest.len() - rest.trim_start().len();
        rest = &rest[skipped..];
        offset += skipped;
        if rest.is_empty() {
            return None;
        }
        let len = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let tok = &rest[..len];
        let col = offset + 1;
        rest = &rest[len..];
        offset += len;
        Some((col, tok))
    })
}

/// Accepts either form, dispatching on a leading `{`.
pub fn parse_any(src: &str) -> Result<RationalMatrix> {
    if src.trim_start().starts_with('{') {
        parse_document(src)
    } else {
        parse_text(src)
    }
}
