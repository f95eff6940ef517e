//! Cut-free backward proof search for L, SDL and SDL⁻.
//!
//! [`Prover::prove`] decides derivability and returns a proof tree. It
//! only ever applies the rules of the selected [`CalculusMode`]; there is no
//! cut rule anywhere in the search or in [`ProofTree`]. [`check_proof`]
//! re-verifies a tree independently of the search.

mod check;
mod enumerate;
mod render;
mod search;
mod table;
mod validate;


use std::fmt;

pub use check::{check_proof, verify_proof, CheckFailure};
pub use render::{proof_from_json, proof_to_json, render_text, ProofJsonError};
pub use validate::{validate_input, InputViolation};

pub use crate::error::ProveError;
use crate::sequent::Sequent;

/// Which rule set the search and the checker accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CalculusMode {
    /// `Ax, /L, /R, \L, \R`.
    L,
    /// L plus `-oR`.
    Sdl,
    /// `Ax, /L, \L, -oR`.
    SdlMinus,
}

impl CalculusMode {
    pub const ALL: [CalculusMode; 3] = [CalculusMode::L, CalculusMode::Sdl, CalculusMode::SdlMinus];

    pub fn allows(self, rule: RuleKind) -> bool {
        match rule {
            RuleKind::Ax | RuleKind::OverL | RuleKind::UnderL => true,
            RuleKind::OverR | RuleKind::UnderR => self != CalculusMode::SdlMinus,
            RuleKind::LinImpR => self != CalculusMode::L,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CalculusMode::L => "L",
            CalculusMode::Sdl => "SDL",
            CalculusMode::SdlMinus => "SDL-",
        }
    }
}

impl fmt::Display for CalculusMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Ax,
    OverL,
    OverR,
    UnderL,
    UnderR,
    LinImpR,
}

/// A rule application together with the data that pins down its instance.
///
/// For the left rules `u` is the length of the context `U` before the
/// active formula (`/L`) or before the argument block (`\L`), and `t` is
/// the length of the argument block `T`. `insert` is the index of the
/// discharged hypothesis in the premise antecedent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Ax,
    OverL { u: usize, t: usize },
    OverR,
    UnderL { u: usize, t: usize },
    UnderR,
    LinImpR { insert: usize },
}

impl Rule {
    pub fn kind(self) -> RuleKind {
        match self {
            Rule::Ax => RuleKind::Ax,
            Rule::OverL { .. } => RuleKind::OverL,
            Rule::OverR => RuleKind::OverR,
            Rule::UnderL { .. } => RuleKind::UnderL,
            Rule::UnderR => RuleKind::UnderR,
            Rule::LinImpR { .. } => RuleKind::LinImpR,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::Ax => "Ax",
            Rule::OverL { .. } => "/L",
            Rule::OverR => "/R",
            Rule::UnderL { .. } => "\\L",
            Rule::UnderR => "\\R",
            Rule::LinImpR { .. } => "-oR",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Rule::Ax => 0,
            Rule::OverR | Rule::UnderR | Rule::LinImpR { .. } => 1,
            Rule::OverL { .. } | Rule::UnderL { .. } => 2,
        }
    }
}

/// A derivation. Left rules list the argument premise `T => B` first and
/// the main premise second.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProofTree {
    pub rule: Rule,
    pub conclusion: Sequent,
    pub premises: Vec<ProofTree>,
}

impl ProofTree {
    /// Pre-order traversal of all nodes.
    pub fn nodes(&self) -> Vec<&ProofTree> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(n) = stack.pop() {
            out.push(n);
            stack.extend(n.premises.iter().rev());
        }
        out
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self
            .premises
            .iter()
            .map(ProofTree::height)
            .max()
            .unwrap_or(0)
    }

    pub fn rule_count(&self, kind: RuleKind) -> usize {
        self.nodes()
            .iter()
            .filter(|n| n.rule.kind() == kind)
            .count()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub cache_hits: u64,
    pub pruned_by_count: u64,
    pub max_depth: u64,
}

impl SearchStats {
    pub fn absorb(&mut self, other: &SearchStats) {
        self.nodes_expanded += other.nodes_expanded;
        self.cache_hits += other.cache_hits;
        self.pruned_by_count += other.pruned_by_count;
        self.max_depth = self.max_depth.max(other.max_depth);
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub proof: Option<ProofTree>,
    pub stats: SearchStats,
}

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy)]
pub struct Prover {
    mode: CalculusMode,
    budget: u64,
}

impl Prover {
    pub fn new(mode: CalculusMode) -> Self {
        Prover {
            mode,
            budget: DEFAULT_BUDGET,
        }
    }

    /// Caps the number of node expansions per query.
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget.max(1);
        self
    }

    pub fn mode(&self) -> CalculusMode {
        self.mode
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn prove(&self, s: &Sequent) -> Result<Outcome, ProveError> {
        let mut stats = SearchStats::default();
        let proof = self.prove_counting(s, &mut stats)?;
        Ok(Outcome { proof, stats })
    }

    /// Like [`Prover::prove`], accumulating statistics into `stats` even
    /// when the budget runs out.
    pub fn prove_counting(
        &self,
        s: &Sequent,
        stats: &mut SearchStats,
    ) -> Result<Option<ProofTree>, ProveError> {
        search::prove(s, self.mode, self.budget, stats)
    }

    /// Up to `limit` distinct proofs of `s`, in search order.
    pub fn enumerate(&self, s: &Sequent, limit: usize) -> Result<Vec<ProofTree>, ProveError> {
        enumerate::enumerate(s, self.mode, self.budget, limit)
    }
}

/// Searches with the default budget.
pub fn prove(s: &Sequent, mode: CalculusMode) -> Result<Outcome, ProveError> {
    Prover::new(mode).prove(s)
}

pub fn enumerate_proofs(
    s: &Sequent,
    mode: CalculusMode,
    limit: usize,
) -> Result<Vec<ProofTree>, ProveError> {
    Prover::new(mode).enumerate(s, limit)
}
