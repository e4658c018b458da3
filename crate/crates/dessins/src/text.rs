//! The `.dsn` text format and the cycle-notation grammar.
//!
//! A document is a sequence of `key = value` lines with `#` comments:
//!
//! ```text
//! n = 5
//! sigma = (2 3 4)
//! alpha = (1 2)(3 5 4)
//! phi = (1 4 5 2)      # optional; re-checked, never trusted
//! ```
//!
//! Cycles are parenthesised dart lists separated by spaces or commas; fixed
//! points may be omitted and cycles must be disjoint. Formatting is
//! canonical (cycles start at their minimal dart, sorted by it, fixed
//! points dropped), so `parse ∘ format` is the identity on values.

use thiserror::Error;

use crate::dessin::{Dessin, DessinError};
use crate::perm::Perm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error(transparent)]
    Invalid(#[from] DessinError),
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        col,
        message: message.into(),
    }
}

/// Parses cycle notation into a permutation of `{1..n}`.
pub fn parse_permutation(text: &str, n: usize) -> Result<Perm, ParseError> {
    parse_permutation_at(text, n, 1, 1)
}

fn parse_permutation_at(
    text: &str,
    n: usize,
    line: usize,
    col_base: usize,
) -> Result<Perm, ParseError> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let col = |i: usize| col_base + i;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c != '(' {
            return Err(syntax(line, col(i), format!("expected '(', found '{c}'")));
        }
        i += 1;
        let mut cycle = Vec::new();
        loop {
            while i < chars.len() && (chars[i].is_whitespace() || chars[i] == ',') {
                i += 1;
            }
            if i >= chars.len() {
                return Err(syntax(line, col(i), "unclosed cycle"));
            }
            if chars[i] == ')' {
                if cycle.is_empty() {
                    return Err(syntax(line, col(i), "empty cycle"));
                }
                i += 1;
                break;
            }
            if !chars[i].is_ascii_digit() {
                return Err(syntax(
                    line,
                    col(i),
                    format!("expected dart label, found '{}'", chars[i]),
                ));
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let label: usize = chars[start..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| syntax(line, col(start), "dart label too large"))?;
            if label == 0 || label > n {
                return Err(syntax(
                    line,
                    col(start),
                    format!("dart label {label} out of range 1..={n}"),
                ));
            }
            cycle.push(label);
        }
        cycles.push(cycle);
    }
    Perm::from_cycles(n, &cycles).map_err(|e| match e {
        crate::perm::PermError::DuplicateLabel { label } => syntax(
            line,
            col_base,
            format!("dart label {label} appears in two cycles"),
        ),
        other => ParseError::Invalid(DessinError::Perm(other)),
    })
}

/// Canonical cycle notation of a permutation; the identity formats empty.
pub fn format_permutation(p: &Perm) -> String {
    p.to_string()
}

/// Parses a `.dsn` document into a validated dessin.
pub fn parse_dessin(text: &str) -> Result<Dessin, ParseError> {
    let mut n: Option<(usize, usize)> = None; // (value, line)
    let mut perms: [Option<(String, usize, usize)>; 3] = [None, None, None];
    const KEYS: [&str; 3] = ["sigma", "alpha", "phi"];

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let eq = line
            .find('=')
            .ok_or_else(|| syntax(line_no, 1, "expected 'key = value'"))?;
        let key = line[..eq].trim();
        let key_col = line.find(|c: char| !c.is_whitespace()).unwrap_or(0) + 1;
        let value = &line[eq + 1..];
        let value_col = eq + 2 + leading_ws(value);
        let value = value.trim();
        match key {
            "n" => {
                if n.is_some() {
                    return Err(syntax(line_no, key_col, "duplicate key 'n'"));
                }
                let parsed: usize = value.parse().map_err(|_| {
                    syntax(line_no, value_col, format!("invalid dart count '{value}'"))
                })?;
                n = Some((parsed, line_no));
            }
            _ => match KEYS.iter().position(|&k| k == key) {
                Some(slot) => {
                    if perms[slot].is_some() {
                        return Err(syntax(line_no, key_col, format!("duplicate key '{key}'")));
                    }
                    perms[slot] = Some((value.to_string(), line_no, value_col));
                }
                None => {
                    return Err(syntax(line_no, key_col, format!("unknown key '{key}'")));
                }
            },
        }
    }

    let (n, _) = n.ok_or_else(|| syntax(1, 1, "missing key 'n'"))?;
    let mut parsed: [Option<Perm>; 3] = [None, None, None];
    for (slot, key) in KEYS.iter().enumerate() {
        if let Some((value, line, col)) = &perms[slot] {
            parsed[slot] = Some(parse_permutation_at(value, n, *line, *col)?);
        } else if slot < 2 {
            return Err(syntax(1, 1, format!("missing key '{key}'")));
        }
    }
    let [sigma, alpha, phi] = parsed;
    Dessin::new(n, sigma.unwrap(), alpha.unwrap(), phi).map_err(ParseError::from)
}

fn leading_ws(s: &str) -> usize {
    s.chars().take_while(|c| c.is_whitespace()).count()
}

/// Canonical `.dsn` emission; `phi` is always written.
pub fn format_dessin(d: &Dessin) -> String {
    let mut out = format!("n = {}", d.n_darts());
    for (key, p) in [("sigma", d.sigma()), ("alpha", d.alpha()), ("phi", d.phi())] {
        let cycles = format_permutation(p);
        if cycles.is_empty() {
            out.push_str(&format!("\n{key} ="));
        } else {
            out.push_str(&format!("\n{key} = {cycles}"));
        }
    }
    out
}
