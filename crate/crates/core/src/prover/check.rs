//! Independent proof checker.
//!
//! Each node is checked against its rule schema by rebuilding the expected
//! conclusion from the premises and the rule data, so checking is a single
//! linear pass over the tree.

use std::fmt;

use super::{CalculusMode, ProofTree, Rule};
use crate::formula::Formula;

/// Why a tree was rejected, with the pre-order index of the offending node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckFailure {
    pub node: usize,
    pub reason: String,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node {}: {}", self.node, self.reason)
    }
}

pub fn check_proof(t: &ProofTree, mode: CalculusMode) -> bool {
    verify_proof(t, mode).is_ok()
}

pub fn verify_proof(t: &ProofTree, mode: CalculusMode) -> Result<(), CheckFailure> {
    let mut index = 0;
    verify_node(t, mode, &mut index)
}

fn verify_node(t: &ProofTree, mode: CalculusMode, index: &mut usize) -> Result<(), CheckFailure> {
    let here = *index;
    *index += 1;
    let fail = |reason: String| Err(CheckFailure { node: here, reason });

    if !mode.allows(t.rule.kind()) {
        return fail(format!("rule {} is not available in {mode}", t.rule.name()));
    }
    if t.premises.len() != t.rule.arity() {
        return fail(format!(
            "rule {} needs {} premises, found {}",
            t.rule.name(),
            t.rule.arity(),
            t.premises.len()
        ));
    }
    let ant = t.conclusion.antecedent();
    let succ = t.conclusion.succedent();

    match t.rule {
        Rule::Ax => {
            if !succ.is_atom() || ant != std::slice::from_ref(succ) {
                return fail("axiom must have the form b => b with b primitive".into());
            }
        }
        Rule::OverR | Rule::UnderR => {
            let over = t.rule == Rule::OverR;
            let p = &t.premises[0].conclusion;
            let expected = match (over, succ) {
                (true, Formula::Over(result, arg)) => (
                    p.antecedent().last() == Some(arg),
                    result,
                    &p.antecedent()[..p.antecedent().len() - 1],
                ),
                (false, Formula::Under(arg, result)) => (
                    p.antecedent().first() == Some(arg),
                    result,
                    &p.antecedent()[1..],
                ),
                _ => return fail(format!("succedent does not match {}", t.rule.name())),
            };
            let (arg_ok, result, rest) = expected;
            if !arg_ok || p.succedent() != &**result || rest != ant {
                return fail(format!("premise does not match {}", t.rule.name()));
            }
        }
        Rule::LinImpR { insert } => {
            let Formula::LinImp(arg, result) = succ else {
                return fail("succedent is not a -o implication".into());
            };
            let p = &t.premises[0].conclusion;
            let pa = p.antecedent();
            if insert >= pa.len() || pa[insert] != **arg || p.succedent() != &**result {
                return fail(
                    "premise does not discharge the hypothesis at the given position".into(),
                );
            }
            let rest: Vec<&Formula> = pa
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != insert)
                .map(|(_, f)| f)
                .collect();
            if rest.len() != ant.len() || rest.iter().zip(ant).any(|(a, b)| *a != b) {
                return fail("conclusion is not the premise minus the hypothesis".into());
            }
        }
        Rule::OverL { u, t: tlen } | Rule::UnderL { u, t: tlen } => {
            let over = matches!(t.rule, Rule::OverL { .. });
            let arg_seq = &t.premises[0].conclusion;
            let main = &t.premises[1].conclusion;
            let block = arg_seq.antecedent();
            let ma = main.antecedent();
            if block.len() != tlen || u >= ma.len() || main.succedent() != succ {
                return fail(format!("split ({u}, {tlen}) does not fit the premises"));
            }
            let result = &ma[u];
            let functor = if over {
                Formula::over(result.clone(), arg_seq.succedent().clone())
            } else {
                Formula::under(arg_seq.succedent().clone(), result.clone())
            };
            let mut expected: Vec<&Formula> = ma[..u].iter().collect();
            if over {
                expected.push(&functor);
                expected.extend(block);
            } else {
                expected.extend(block);
                expected.push(&functor);
            }
            expected.extend(&ma[u + 1..]);
            if expected.len() != ant.len() || expected.iter().zip(ant).any(|(a, b)| *a != b) {
                return fail(format!(
                    "conclusion is not an instance of {} at split ({u}, {tlen})",
                    t.rule.name()
                ));
            }
        }
    }
    for p in &t.premises {
        verify_node(p, mode, index)?;
    }
    Ok(())
}
