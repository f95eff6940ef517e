//! Context-free grammars in Greibach normal form and their translation to
//! categorial lexicons.
//!
//! A production `A -> a B1 ... Bk` gives `a` the type `(...(A/Bk)/...)/B1`,
//! which consumes `B1` first, then `B2`, and so on to its right. The
//! translation uses no `-o`, so membership agrees across L, SDL and SDL⁻.

use std::collections::BTreeSet;

use super::{Grammar, GrammarError};
use crate::formula::{is_ident, Atom, Formula};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Production {
    pub lhs: String,
    pub terminal: String,
    pub nonterminals: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cfg {
    pub start: String,
    pub productions: Vec<Production>,
}

impl Cfg {
    /// Reads lines `A -> a B C | b`. The first left-hand side is the start
    /// symbol; any symbol that is a left-hand side somewhere is a
    /// nonterminal.
    pub fn parse(text: &str) -> Result<Cfg, GrammarError> {
        let mut start = None;
        let mut productions = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: &str| GrammarError::File {
                line: n + 1,
                message: message.to_string(),
            };
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| err("expected \"A -> a B ...\""))?;
            let lhs = lhs.trim();
            if lhs.is_empty() || lhs.contains(char::is_whitespace) {
                return Err(err("left-hand side must be a single symbol"));
            }
            start.get_or_insert_with(|| lhs.to_string());
            for alt in rhs.split('|') {
                let mut symbols = alt.split_whitespace().map(str::to_string);
                let terminal = symbols.next().ok_or_else(|| err("empty production"))?;
                productions.push(Production {
                    lhs: lhs.to_string(),
                    terminal,
                    nonterminals: symbols.collect(),
                });
            }
        }
        let start = start.ok_or(GrammarError::File {
            line: 0,
            message: "no productions".into(),
        })?;
        Ok(Cfg { start, productions })
    }
}

pub fn cfg_to_grammar(cfg: &Cfg) -> Result<Grammar, GrammarError> {
    let nonterminals: BTreeSet<&str> = cfg.productions.iter().map(|p| p.lhs.as_str()).collect();
    let atom = |name: &str| -> Result<Atom, GrammarError> {
        if !nonterminals.contains(name) {
            return Err(GrammarError::NotGnf(format!("{name:?} has no productions")));
        }
        if !is_ident(name) {
            return Err(GrammarError::NotGnf(format!(
                "nonterminal {name:?} is not a valid type name"
            )));
        }
        Ok(Atom::new(name).expect("checked identifier"))
    };
    let start = atom(&cfg.start)?;
    let mut entries = Vec::with_capacity(cfg.productions.len());
    for p in &cfg.productions {
        if nonterminals.contains(p.terminal.as_str()) {
            return Err(GrammarError::NotGnf(format!(
                "production {} -> {} ... does not start with a terminal",
                p.lhs, p.terminal
            )));
        }
        let mut ty = Formula::Atom(atom(&p.lhs)?);
        for b in p.nonterminals.iter().rev() {
            ty = Formula::over(ty, Formula::Atom(atom(b)?));
        }
        entries.push((p.terminal.clone(), vec![ty]));
    }
    Grammar::new(start, entries)
}
