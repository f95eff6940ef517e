//! Line-based grammar files:
//!
//! ```text
//! # comment
//! start: x
//! a: x/(c -o (b -o x)) | x/(c -o (b -o y))
//! ```

use std::fmt::Write as _;

use super::{Grammar, GrammarError};
use crate::formula::{is_ident, parse_formula, Atom};

pub fn parse_grammar(text: &str) -> Result<Grammar, GrammarError> {
    let mut start = None;
    let mut entries = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| GrammarError::File {
            line: line_no,
            message,
        };
        let (head, body) = line
            .split_once(':')
            .ok_or_else(|| err("expected \"<terminal>: <types>\"".into()))?;
        let head = head.trim();
        let body = body.trim();
        if head == "start" && start.is_none() {
            if !is_ident(body) {
                return Err(err(format!("start type {body:?} is not a primitive type")));
            }
            start = Some(Atom::new(body).expect("checked identifier"));
            continue;
        }
        if head.is_empty() || head.chars().any(char::is_whitespace) {
            return Err(err(format!("invalid terminal {head:?}")));
        }
        let types = body
            .split('|')
            .map(|t| {
                parse_formula(t.trim()).map_err(|source| GrammarError::Syntax {
                    line: line_no,
                    source,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        entries.push((head.to_string(), types));
    }
    let start = start.ok_or(GrammarError::File {
        line: 0,
        message: "missing \"start:\" header".into(),
    })?;
    Grammar::new(start, entries)
}

pub fn format_grammar(g: &Grammar) -> String {
    let mut out = format!("start: {}\n", g.start());
    for (terminal, types) in g.entries() {
        let types: Vec<String> = types.iter().map(ToString::to_string).collect();
        writeln!(out, "{terminal}: {}", types.join(" | ")).expect("writing to a String");
    }
    out
}
