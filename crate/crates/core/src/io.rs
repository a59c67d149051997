//! Plain-text input formats.
//!
//! All formats are line oriented. Blank lines and lines whose first
//! non-blank character is `#` are ignored; every other line must match the
//! format exactly.
//!
//! * Riemann data: two lines `rho v1 v2 p`, left state first.
//! * Partition: one cell per line, `volume rho0 theta0`.
//! * Profile: the keyword lines `delta <value>` and `horizon <value>` followed
//!   by one breakpoint per line, `time value` (a single comma may replace the
//!   whitespace).

use std::path::Path;

use thiserror::Error;

use crate::gas::GasState;
use crate::profile::{Cell, EntropyProfile, PartitionSpec};
use crate::riemann::RiemannData;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Content(String),
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}

struct Field<'a> {
    column: usize,
    text: &'a str,
}

/// Non-comment lines as `(1-based line number, fields)`.
fn records(text: &str, allow_comma: bool) -> Vec<(usize, Vec<Field<'_>>)> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = Vec::new();
        let mut start = None;
        for (pos, ch) in line.char_indices() {
            let sep = ch.is_whitespace() || (allow_comma && ch == ',');
            match (sep, start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    fields.push(Field {
                        column: s + 1,
                        text: &line[s..pos],
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            fields.push(Field {
                column: s + 1,
                text: &line[s..],
            });
        }
        out.push((i + 1, fields));
    }
    out
}

fn number(line: usize, f: &Field<'_>) -> Result<f64, ParseError> {
    match f.text.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(ParseError::at(
            line,
            f.column,
            format!("expected a finite decimal number, found {:?}", f.text),
        )),
    }
}

fn numbers<const N: usize>(
    line: usize,
    fields: &[Field<'_>],
    what: &str,
) -> Result<[f64; N], ParseError> {
    if fields.len() != N {
        let column = fields.get(N).map(|f| f.column).unwrap_or(1);
        return Err(ParseError::at(
            line,
            column,
            format!("expected {N} columns ({what}), found {}", fields.len()),
        ));
    }
    let mut out = [0.0; N];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = number(line, f)?;
    }
    Ok(out)
}

fn read(path: &Path) -> Result<String, ParseError> {
    std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn parse_riemann(text: &str) -> Result<RiemannData, ParseError> {
    let recs = records(text, false);
    if recs.len() != 2 {
        let line = recs
            .get(2)
            .map(|r| r.0)
            .unwrap_or(text.lines().count().max(1));
        return Err(ParseError::at(
            line,
            1,
            format!("expected exactly two states, found {}", recs.len()),
        ));
    }
    let mut states = Vec::with_capacity(2);
    for (line, fields) in &recs {
        let [rho, v1, v2, p] = numbers::<4>(*line, fields, "rho v1 v2 p")?;
        let state =
            GasState::new(rho, v1, v2, p).map_err(|e| ParseError::at(*line, 1, e.to_string()))?;
        states.push(state);
    }
    Ok(RiemannData {
        left: states[0],
        right: states[1],
    })
}

pub fn parse_riemann_file(path: &Path) -> Result<RiemannData, ParseError> {
    parse_riemann(&read(path)?)
}

pub fn parse_partition(text: &str) -> Result<PartitionSpec, ParseError> {
    let mut cells = Vec::new();
    for (line, fields) in records(text, false) {
        let [volume, rho0, theta0] = numbers::<3>(line, &fields, "volume rho0 theta0")?;
        cells.push(Cell {
            volume,
            rho0,
            theta0,
        });
    }
    PartitionSpec::new(cells).map_err(|e| ParseError::Content(e.to_string()))
}

pub fn parse_partition_file(path: &Path) -> Result<PartitionSpec, ParseError> {
    parse_partition(&read(path)?)
}

pub fn parse_profile(text: &str) -> Result<EntropyProfile, ParseError> {
    let (mut delta, mut horizon) = (None, None);
    let (mut times, mut values) = (Vec::new(), Vec::new());
    for (line, fields) in records(text, true) {
        match fields.first().map(|f| f.text) {
            Some(key @ ("delta" | "horizon")) => {
                if fields.len() != 2 {
                    return Err(ParseError::at(line, 1, format!("expected `{key} <value>`")));
                }
                let x = number(line, &fields[1])?;
                if key == "delta" {
                    delta = Some(x);
                } else {
                    horizon = Some(x);
                }
            }
            _ => {
                let [t, v] = numbers::<2>(line, &fields, "time value")?;
                times.push(t);
                values.push(v);
            }
        }
    }
    let delta =
        delta.ok_or_else(|| ParseError::Content("profile is missing the `delta` line".into()))?;
    let horizon = horizon
        .ok_or_else(|| ParseError::Content("profile is missing the `horizon` line".into()))?;
    EntropyProfile::new(delta, horizon, times, values)
        .map_err(|e| ParseError::Content(e.to_string()))
}

pub fn parse_profile_file(path: &Path) -> Result<EntropyProfile, ParseError> {
    parse_profile(&read(path)?)
}

/// Bundled input file for the preset Riemann data.
pub const PAPER_RIEMANN_FILE: &str = include_str!("../data/paper.riemann");
