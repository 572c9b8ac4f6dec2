//! The `.tri` text format.
//!
//! ```text
//! # comments start with '#'
//! 4
//! 1 3 2
//! 2 3 0
//! 0 3 1
//! 0 1 2
//! ```
//!
//! The first data line is the vertex count `n`; the following `n` data lines
//! list each vertex's neighbours in counterclockwise order. The outer face is
//! implicitly `(0, 1, 2)`. Blank lines are ignored.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use super::{Triangulation, TriangulationError};
use crate::VertexId;

#[derive(Debug, Error)]
pub enum TriFormatError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid triangulation: {0}")]
    Invalid(#[from] TriangulationError),
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

pub fn parse_tri(text: &str) -> Result<Triangulation, TriFormatError> {
    let mut lines = data_lines(text);
    let (header_line, header) = lines.next().ok_or(TriFormatError::Parse {
        line: text.lines().count() + 1,
        message: "missing vertex count".into(),
    })?;
    let n: usize = header.parse().map_err(|_| TriFormatError::Parse {
        line: header_line,
        message: format!("expected a vertex count, found `{header}`"),
    })?;

    let mut rotation = Vec::with_capacity(n);
    let mut last_line = header_line;
    for (line, body) in lines.by_ref() {
        if rotation.len() == n {
            return Err(TriFormatError::Parse {
                line,
                message: format!("unexpected data after {n} vertex lines"),
            });
        }
        let list = body
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .map(VertexId)
                    .map_err(|_| TriFormatError::Parse {
                        line,
                        message: format!("bad vertex index `{tok}`"),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rotation.push(list);
        last_line = line;
    }
    if rotation.len() < n {
        return Err(TriFormatError::Parse {
            line: last_line + 1,
            message: format!(
                "truncated: expected {n} vertex lines, found {}",
                rotation.len()
            ),
        });
    }
    Ok(Triangulation::new(rotation)?)
}

pub fn format_tri(t: &Triangulation) -> String {
    let mut out = String::new();
    writeln!(out, "{}", t.n()).unwrap();
    for list in t.rotation() {
        let line: Vec<String> = list.iter().map(|v| v.0.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

pub fn read_tri(path: impl AsRef<Path>) -> Result<Triangulation, TriFormatError> {
    parse_tri(&std::fs::read_to_string(path)?)
}

pub fn write_tri(t: &Triangulation, path: impl AsRef<Path>) -> Result<(), TriFormatError> {
    std::fs::write(path, format_tri(t))?;
    Ok(())
}
