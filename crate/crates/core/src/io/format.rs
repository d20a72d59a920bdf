//! Plain-text matrix files.
//!
//! ```text
//! # comments run from '#' to the end of the line
//! 4
//! labels: 1 2 3 4
//! 1 0 0 0
//! 1 1 0 0
//! 1 1 1 0
//! 1 1 0 1
//! ```
//!
//! The first line holds the order, an optional `labels:` line follows, then
//! one row per line. Rows are space-separated 0/1 entries; a row may also be
//! written as a single run of digits (`1100`).

use crate::error::{Error, Result};
use crate::poset::{default_labels, PosetMatrix, RelationTable, MAX_ORDER};

/// A non-empty line with comments stripped, plus where it came from.
struct Line<'a> {
    number: usize,
    /// byte offset of `text` within the original line
    offset: usize,
    text: &'a str,
}

fn content_lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        let offset = body.len() - trimmed.len();
        let trimmed = trimmed.trim_end();
        (!trimmed.is_empty()).then_some(Line {
            number: k + 1,
            offset,
            text: trimmed,
        })
    })
}

/// Tokens of a line with their 1-based columns.
fn tokens<'a>(line: &'a Line<'a>) -> impl Iterator<Item = (usize, &'a str)> + 'a {
    let base = line.text.as_ptr() as usize;
    line.text
        .split_whitespace()
        .map(move |tok| (line.offset + (tok.as_ptr() as usize - base) + 1, tok))
}

fn parse_row(line: &Line<'_>, n: usize) -> Result<Vec<u8>> {
    let toks: Vec<(usize, &str)> = tokens(line).collect();
    let cells: Vec<(usize, char)> = if toks.len() == 1 && n > 1 {
        let (col, tok) = toks[0];
        tok.chars().enumerate().map(|(k, c)| (col + k, c)).collect()
    } else {
        let mut cells = Vec::with_capacity(toks.len());
        for (col, tok) in toks {
            let mut chars = tok.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => cells.push((col, c)),
                _ => {
                    return Err(Error::parse(
                        line.number,
                        col,
                        format!("expected 0 or 1, found {tok:?}"),
                    ))
                }
            }
        }
        cells
    };
    if cells.len() != n {
        return Err(Error::parse(
            line.number,
            line.offset + 1,
            format!("expected {n} entries, found {}", cells.len()),
        ));
    }
    cells
        .into_iter()
        .map(|(col, c)| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(Error::parse(
                line.number,
                col,
                format!("expected 0 or 1, found {other:?}"),
            )),
        })
        .collect()
}

/// Parses a file into a raw table without checking the poset axioms.
pub fn parse_table(text: &str) -> Result<RelationTable> {
    let mut lines = content_lines(text);
    let header = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "empty input: expected the matrix order"))?;
    let order: usize = header.text.parse().map_err(|_| {
        Error::parse(
            header.number,
            header.offset + 1,
            format!("expected the matrix order, found {:?}", header.text),
        )
    })?;
    if order == 0 || order > MAX_ORDER {
        return Err(Error::parse(
            header.number,
            header.offset + 1,
            format!("order must be between 1 and {MAX_ORDER}"),
        ));
    }

    let mut labels = None;
    let mut rows = Vec::with_capacity(order);
    for line in lines {
        if rows.len() == order {
            return Err(Error::parse(
                line.number,
                line.offset + 1,
                "unexpected content after the last row",
            ));
        }
        if let Some(rest) = line.text.strip_prefix("labels:") {
            if labels.is_some() || !rows.is_empty() {
                return Err(Error::parse(
                    line.number,
                    line.offset + 1,
                    "the labels line must directly follow the order",
                ));
            }
            let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if list.len() != order {
                return Err(Error::parse(
                    line.number,
                    line.offset + 1,
                    format!("expected {order} labels, found {}", list.len()),
                ));
            }
            labels = Some((line.number, line.offset, list));
            continue;
        }
        rows.push(parse_row(&line, order)?);
    }
    if rows.len() != order {
        let last = text.lines().count().max(1);
        return Err(Error::parse(
            last,
            1,
            format!("expected {order} rows, found {}", rows.len()),
        ));
    }
    let table = RelationTable::from_rows(&rows)?;
    match labels {
        None => Ok(table),
        Some((number, offset, list)) => table
            .with_labels(list)
            .map_err(|e| Error::parse(number, offset + 1, e.to_string())),
    }
}

/// Parses and validates a poset matrix stored in a linear extension.
pub fn parse_matrix(text: &str) -> Result<PosetMatrix> {
    PosetMatrix::new(parse_table(text)?)
}

/// Writes a table in the file format. The `labels:` line is omitted for
/// the default labels `1..n`.
pub fn serialize_table(table: &RelationTable) -> String {
    let n = table.order();
    let mut out = format!("{n}\n");
    if table.labels() != default_labels(n).as_slice() {
        out.push_str("labels:");
        for label in table.labels() {
            out.push(' ');
            out.push_str(label);
        }
        out.push('\n');
    }
    for y in 0..n {
        for z in 0..n {
            if z > 0 {
                out.push(' ');
            }
            out.push(if table.get(y, z) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn serialize_matrix(m: &PosetMatrix) -> String {
    serialize_table(m.table())
}
