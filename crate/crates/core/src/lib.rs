//! Proof search and parsing for the product-free Lambek calculus `L`, the
//! semidirectional calculus `SDL` (L plus a permuting implication `-o`
//! that has only a right rule), and its fragment `SDL⁻` without `/R` and
//! `\R`.
//!
//! * [`formula`], [`sequent`]: types, sequents and their text syntax.
//! * [`count`], [`polarity`]: the count invariant, polarity, subformulas.
//! * [`prover`]: cut-free search, proof enumeration and the proof checker.
//! * [`grammar`]: lexicalised grammars, membership, CFG translation.
//! * [`reduction`]: 3-Partition instances and their encoding as grammars.

pub mod count;
pub mod error;
pub mod formula;
pub mod grammar;
pub mod polarity;
pub mod prover;
pub mod reduction;
pub mod sequent;

pub use count::{balanced, count, sequent_counts, CountVector};
pub use error::{EmptyAntecedent, ProveError, SyntaxError};
pub use formula::{format_formula, parse_formula, Atom, Formula};
pub use polarity::{polarity_report, subformulas, Polarity, PolarityReport};
pub use prover::{
    check_proof, enumerate_proofs, prove, validate_input, CalculusMode, ProofTree, Prover, Rule,
    RuleKind, SearchStats,
};
pub use sequent::{parse_sequent, Sequent};
