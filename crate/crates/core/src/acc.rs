//! The `.acc` text format for incidence structures.
//!
//! ```text
//! acc 1
//! alpha 1
//! lines 3
//! v 0 1
//! v 0 2
//! v 1 2
//! ```
//!
//! Lines starting with `#` are comments and blank lines are ignored. Ids in a
//! vertex line must be strictly increasing. [`serialize_structure`] always
//! writes the canonical form: vertices sorted lexicographically, single
//! spaces, trailing newline.

use std::fmt::Write as _;

use thiserror::Error;

use crate::incidence::{CurveId, IncidenceStructure};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number in the input.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("input ended before the header was complete")]
    MissingHeader,
    #[error("expected `{expected}`, found `{found}`")]
    BadHeader {
        expected: &'static str,
        found: String,
    },
    #[error("unsupported format version {0}")]
    UnsupportedVersion(String),
    #[error("alpha must be a positive integer")]
    BadAlpha,
    #[error("bad token `{0}`")]
    BadToken(String),
    #[error("unexpected record `{0}`")]
    UnexpectedRecord(String),
    #[error("curve id {id} out of range (lines {n})")]
    IdOutOfRange { id: CurveId, n: usize },
    #[error("vertex has {0} curves; at least 2 are required")]
    SmallVertex(usize),
    #[error("curve id {0} repeated within a vertex")]
    DuplicateIdInVertex(CurveId),
    #[error("curve ids must be strictly increasing")]
    NotIncreasing,
}

/// Parses `.acc` text into a structure.
pub fn parse_structure(text: &str) -> Result<IncidenceStructure, ParseError> {
    let mut records = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let last_line = text.lines().count().max(1);

    let mut header = |expected: &'static str| -> Result<(usize, String), ParseError> {
        let (line, record) = records.next().ok_or(ParseError {
            line: last_line,
            kind: ParseErrorKind::MissingHeader,
        })?;
        let mut parts = record.split_whitespace();
        let bad = || ParseError {
            line,
            kind: ParseErrorKind::BadHeader {
                expected,
                found: record.to_string(),
            },
        };
        if parts.next() != Some(expected) {
            return Err(bad());
        }
        let value = parts.next().ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok((line, value.to_string()))
    };

    let (line, version) = header("acc")?;
    if version.parse::<u32>() != Ok(FORMAT_VERSION) {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::UnsupportedVersion(version),
        });
    }
    let (line, alpha) = header("alpha")?;
    let alpha = match alpha.parse::<u32>() {
        Ok(a) if a > 0 => a,
        _ => {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::BadAlpha,
            })
        }
    };
    let (line, n) = header("lines")?;
    let n: usize = n.parse().map_err(|_| ParseError {
        line,
        kind: ParseErrorKind::BadToken(n.clone()),
    })?;

    let mut vertices = Vec::new();
    for (line, record) in records {
        let err = |kind| ParseError { line, kind };
        let mut parts = record.split_whitespace();
        if parts.next() != Some("v") {
            return Err(err(ParseErrorKind::UnexpectedRecord(record.to_string())));
        }
        let mut ids = Vec::new();
        for token in parts {
            let id: CurveId = token
                .parse()
                .map_err(|_| err(ParseErrorKind::BadToken(token.to_string())))?;
            if id as usize >= n {
                return Err(err(ParseErrorKind::IdOutOfRange { id, n }));
            }
            if ids.contains(&id) {
                return Err(err(ParseErrorKind::DuplicateIdInVertex(id)));
            }
            ids.push(id);
        }
        if ids.len() < 2 {
            return Err(err(ParseErrorKind::SmallVertex(ids.len())));
        }
        if ids.windows(2).any(|w| w[0] >= w[1]) {
            return Err(err(ParseErrorKind::NotIncreasing));
        }
        vertices.push(ids);
    }

    // every id was range-checked and deduplicated above
    Ok(IncidenceStructure::new(alpha, n, vertices).expect("checked while parsing"))
}

/// Writes the canonical `.acc` form.
pub fn serialize_structure(s: &IncidenceStructure) -> String {
    let canonical = s.canonical();
    let mut out = String::new();
    let _ = writeln!(out, "acc {FORMAT_VERSION}");
    let _ = writeln!(out, "alpha {}", s.alpha());
    let _ = writeln!(out, "lines {}", s.curve_count());
    for vertex in canonical.vertices() {
        out.push('v');
        for id in vertex {
            let _ = write!(out, " {id}");
        }
        out.push('\n');
    }
    out
}
