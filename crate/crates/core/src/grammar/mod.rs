//! Lexicalised categorial grammars.
//!
//! A grammar maps each terminal to a finite, ordered list of types and
//! names a primitive start type. A nonempty word is in the language iff
//! for some choice of one type per token the sequent `types => start` is
//! derivable in the chosen calculus.

mod cfg;
mod file;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use thiserror::Error;

pub use cfg::{cfg_to_grammar, Cfg, Production};
pub use file::{format_grammar, parse_grammar};

use crate::error::{ProveError, SyntaxError};
use crate::formula::{Atom, Formula};
use crate::prover::{CalculusMode, ProofTree, Prover, SearchStats, DEFAULT_BUDGET};
use crate::sequent::Sequent;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("unknown terminal {0:?}")]
    UnknownTerminal(String),
    #[error("the empty word is not in any language of this kind")]
    EmptyWord,
    #[error("terminal {0:?} has no lexical entries")]
    EmptyEntry(String),
    #[error("invalid terminal {0:?}")]
    InvalidTerminal(String),
    #[error("line {line}: {message}")]
    File { line: usize, message: String },
    #[error("line {line}: {source}")]
    Syntax { line: usize, source: SyntaxError },
    #[error("not in Greibach normal form: {0}")]
    NotGnf(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    lexicon: BTreeMap<String, Vec<Formula>>,
    start: Atom,
}

impl Grammar {
    /// Builds a grammar. Entries for a repeated terminal are merged and
    /// duplicate types dropped, keeping first-listed order.
    pub fn new<I>(start: Atom, entries: I) -> Result<Self, GrammarError>
    where
        I: IntoIterator<Item = (String, Vec<Formula>)>,
    {
        let mut lexicon: BTreeMap<String, Vec<Formula>> = BTreeMap::new();
        for (terminal, types) in entries {
            if terminal.is_empty() || terminal.chars().any(char::is_whitespace) {
                return Err(GrammarError::InvalidTerminal(terminal));
            }
            if types.is_empty() {
                return Err(GrammarError::EmptyEntry(terminal));
            }
            let slot = lexicon.entry(terminal).or_default();
            for ty in types {
                if !slot.contains(&ty) {
                    slot.push(ty);
                }
            }
        }
        Ok(Grammar { lexicon, start })
    }

    pub fn start(&self) -> &Atom {
        &self.start
    }

    pub fn alphabet(&self) -> impl Iterator<Item = &str> {
        self.lexicon.keys().map(String::as_str)
    }

    pub fn lexicon(&self, terminal: &str) -> Option<&[Formula]> {
        self.lexicon.get(terminal).map(Vec::as_slice)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &[Formula])> {
        self.lexicon.iter().map(|(t, f)| (t.as_str(), f.as_slice()))
    }

    /// Primitive types occurring in the lexicon, plus the start type.
    pub fn primitives(&self) -> BTreeSet<Atom> {
        let mut out: BTreeSet<Atom> = self
            .lexicon
            .values()
            .flatten()
            .flat_map(|f| f.atoms())
            .cloned()
            .collect();
        out.insert(self.start.clone());
        out
    }

    fn entries_for<S: AsRef<str>>(&self, word: &[S]) -> Result<Vec<&[Formula]>, GrammarError> {
        if word.is_empty() {
            return Err(GrammarError::EmptyWord);
        }
        word.iter()
            .map(|tok| {
                self.lexicon(tok.as_ref())
                    .ok_or_else(|| GrammarError::UnknownTerminal(tok.as_ref().to_string()))
            })
            .collect()
    }
}

/// Splits a word given as text into terminals.
pub fn tokenize_word(text: &str) -> Vec<&str> {
    text.split_whitespace().collect()
}

/// Iterator over `l(w1) × … × l(wn)` in lexicographic order of entry
/// indices (the last token varies fastest).
pub struct Assignments<'g> {
    lists: Vec<&'g [Formula]>,
    index: Vec<usize>,
    done: bool,
}

impl Iterator for Assignments<'_> {
    type Item = Vec<Formula>;

    fn next(&mut self) -> Option<Vec<Formula>> {
        if self.done {
            return None;
        }
        let item = self
            .index
            .iter()
            .zip(&self.lists)
            .map(|(&i, l)| l[i].clone())
            .collect();
        self.done = true;
        for pos in (0..self.index.len()).rev() {
            if self.index[pos] + 1 < self.lists[pos].len() {
                self.index[pos] += 1;
                self.done = false;
                break;
            }
            self.index[pos] = 0;
        }
        Some(item)
    }
}

pub fn assignments<'g, S: AsRef<str>>(
    g: &'g Grammar,
    word: &[S],
) -> Result<Assignments<'g>, GrammarError> {
    let lists = g.entries_for(word)?;
    Ok(Assignments {
        index: vec![0; lists.len()],
        lists,
        done: false,
    })
}

#[derive(Debug, Clone)]
pub struct RecognizeOptions {
    /// Node budget for each assignment's proof search.
    pub budget: u64,
    /// Wall-clock cap for the whole query.
    pub deadline: Option<Duration>,
}

impl Default for RecognizeOptions {
    fn default() -> Self {
        RecognizeOptions {
            budget: DEFAULT_BUDGET,
            deadline: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ParseResult {
    pub member: bool,
    /// The first witnessing assignment in enumeration order.
    pub assignment: Option<Vec<Formula>>,
    pub proof: Option<ProofTree>,
    pub stats: SearchStats,
    /// Some search ran out of budget (or the deadline passed) before an
    /// answer was found; `member = false` then means "unknown".
    pub budget_exhausted: bool,
}

impl ParseResult {
    pub fn is_unknown(&self) -> bool {
        !self.member && self.budget_exhausted
    }
}

pub fn recognize<S: AsRef<str>>(
    g: &Grammar,
    word: &[S],
    mode: CalculusMode,
) -> Result<ParseResult, GrammarError> {
    recognize_with(g, word, mode, &RecognizeOptions::default())
}

pub fn recognize_with<S: AsRef<str>>(
    g: &Grammar,
    word: &[S],
    mode: CalculusMode,
    opts: &RecognizeOptions,
) -> Result<ParseResult, GrammarError> {
    let lists = g.entries_for(word)?;
    let prims: Vec<Atom> = g.primitives().into_iter().collect();
    let dense =
        |f: &Formula| -> Vec<i64> { prims.iter().map(|p| crate::count::count(f, p)).collect() };
    let counts: Vec<Vec<Vec<i64>>> = lists
        .iter()
        .map(|l| l.iter().map(dense).collect())
        .collect();
    let target = dense(&Formula::Atom(g.start.clone()));

    // Per-suffix bounds on the reachable counts, for pruning partial choices.
    let width = prims.len();
    let mut lo = vec![vec![0i64; width]; lists.len() + 1];
    let mut hi = vec![vec![0i64; width]; lists.len() + 1];
    for pos in (0..lists.len()).rev() {
        for p in 0..width {
            let vals = counts[pos].iter().map(|c| c[p]);
            lo[pos][p] = lo[pos + 1][p] + vals.clone().min().unwrap_or(0);
            hi[pos][p] = hi[pos + 1][p] + vals.max().unwrap_or(0);
        }
    }

    let mut walk = Walk {
        lists: &lists,
        counts: &counts,
        lo: &lo,
        hi: &hi,
        target: &target,
        start: Formula::Atom(g.start.clone()),
        prover: Prover::new(mode).with_budget(opts.budget),
        deadline: opts.deadline.map(|d| Instant::now() + d),
        chosen: Vec::with_capacity(lists.len()),
        result: ParseResult {
            member: false,
            assignment: None,
            proof: None,
            stats: SearchStats::default(),
            budget_exhausted: false,
        },
    };
    walk.visit(0, vec![0; width]);
    Ok(walk.result)
}

struct Walk<'a> {
    lists: &'a [&'a [Formula]],
    counts: &'a [Vec<Vec<i64>>],
    lo: &'a [Vec<i64>],
    hi: &'a [Vec<i64>],
    target: &'a [i64],
    start: Formula,
    prover: Prover,
    deadline: Option<Instant>,
    chosen: Vec<usize>,
    result: ParseResult,
}

impl Walk<'_> {
    /// Depth-first over assignments in lexicographic order; returns true to stop.
    fn visit(&mut self, pos: usize, partial: Vec<i64>) -> bool {
        let reachable = (0..partial.len()).all(|p| {
            let need = self.target[p] - partial[p];
            self.lo[pos][p] <= need && need <= self.hi[pos][p]
        });
        if !reachable {
            self.result.stats.pruned_by_count += 1;
            return false;
        }
        if pos == self.lists.len() {
            return self.try_assignment();
        }
        for (k, c) in self.counts[pos].iter().enumerate() {
            let next: Vec<i64> = partial.iter().zip(c).map(|(a, b)| a + b).collect();
            self.chosen.push(k);
            let stop = self.visit(pos + 1, next);
            self.chosen.pop();
            if stop {
                return true;
            }
        }
        false
    }

    fn try_assignment(&mut self) -> bool {
        if let Some(deadline) = self.deadline {
            if Instant::now() > deadline {
                self.result.budget_exhausted = true;
                return true;
            }
        }
        let types: Vec<Formula> = self
            .chosen
            .iter()
            .zip(self.lists)
            .map(|(&k, l)| l[k].clone())
            .collect();
        let sequent = Sequent::new(types, self.start.clone()).expect("word is nonempty");
        match self.prover.prove_counting(&sequent, &mut self.result.stats) {
            Ok(Some(proof)) => {
                self.result.member = true;
                self.result.assignment = Some(sequent.into_parts().0);
                self.result.proof = Some(proof);
                true
            }
            Ok(None) => false,
            Err(ProveError::BudgetExhausted { .. }) => {
                self.result.budget_exhausted = true;
                false
            }
        }
    }
}

/// The grammar for `a^n b^n c^n` (start type `x`).
pub fn anbncn_grammar() -> Grammar {
    let parse = |s: &str| crate::formula::parse_formula(s).expect("built-in type");
    Grammar::new(
        Atom::new("x").expect("valid atom"),
        [
            ("a", ["x/(c -o (b -o x))", "x/(c -o (b -o y))"]),
            ("b", ["(y/b)/y", "(y/b)/z"]),
            ("c", ["(z/c)/z", "z/c"]),
        ]
        .map(|(t, tys)| (t.to_string(), tys.iter().map(|s| parse(s)).collect())),
    )
    .expect("built-in grammar is well formed")
}
