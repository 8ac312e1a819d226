//! Line-based ARS text format.
//!
//! ```text
//! # comment
//! states a b c d
//! trans a b
//! trans b a
//! ```

use std::fmt::Write as _;

use apr_core::{Ars, ObjectId};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

pub fn is_label(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || "_.<>,-".contains(c))
}

/// Tokens of one line with their 1-based columns, comment stripped.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let line = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().chain([(line.len(), ' ')]) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    out
}

pub fn parse_ars(text: &str) -> Result<Ars, FormatError> {
    let mut labels: Option<Vec<String>> = None;
    let mut index = std::collections::HashMap::new();
    let mut edges = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let err = |column, message: String| FormatError {
            line: ln + 1,
            column,
            message,
        };
        let toks = tokens(line);
        let Some(&(col, keyword)) = toks.first() else {
            continue;
        };
        for &(c, t) in &toks[1..] {
            if !is_label(t) {
                return Err(err(c, format!("invalid label '{t}'")));
            }
        }
        match keyword {
            "states" => {
                if labels.is_some() {
                    return Err(err(col, "second 'states' line".into()));
                }
                let mut list = Vec::with_capacity(toks.len() - 1);
                for &(c, t) in &toks[1..] {
                    if index
                        .insert(t.to_owned(), ObjectId(list.len() as u32))
                        .is_some()
                    {
                        return Err(err(c, format!("duplicate state '{t}'")));
                    }
                    list.push(t.to_owned());
                }
                labels = Some(list);
            }
            "trans" => {
                if toks.len() != 3 {
                    return Err(err(col, "expected 'trans <src> <dst>'".into()));
                }
                if labels.is_none() {
                    return Err(err(col, "'trans' before 'states'".into()));
                }
                let mut ends = [ObjectId(0); 2];
                for (slot, &(c, t)) in ends.iter_mut().zip(&toks[1..]) {
                    *slot = *index
                        .get(t)
                        .ok_or_else(|| err(c, format!("unknown state '{t}'")))?;
                }
                edges.push((ends[0], ends[1]));
            }
            other => return Err(err(col, format!("unknown keyword '{other}'"))),
        }
    }
    let labels = labels.ok_or(FormatError {
        line: text.lines().count().max(1),
        column: 1,
        message: "missing 'states' line".into(),
    })?;
    Ars::new(labels, edges).map_err(|e| FormatError {
        line: 1,
        column: 1,
        message: e.to_string(),
    })
}

/// Renders `ars` so that [`parse_ars`] gives it back unchanged.
pub fn write_ars(ars: &Ars) -> String {
    let mut out = String::from("states");
    for l in ars.labels() {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
    for (s, t) in ars.edges() {
        let _ = writeln!(out, "trans {} {}", ars.label(s), ars.label(t));
    }
    out
}

/// Splits a comma-joined label list. Commas inside `<...>` belong to the label.
pub fn split_labels(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '<' => depth += 1,
            '>' => depth -= 1,
            ',' if depth <= 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out.retain(|l| !l.is_empty());
    out
}
