//! Exhaustive enumeration of cut-free proofs over explicit sequents.
//!
//! Unlike the decision search this tries every enabled rule at every node
//! (Ax, then /R, \R, -oR at each insertion point, then left rules over all
//! occurrences and argument blocks), so it reaches every distinct proof.

use std::collections::HashSet;
use std::rc::Rc;

use super::search::{to_tree, Node};
use super::table::{Id, Kind, Table};
use super::{CalculusMode, ProofTree, Rule, RuleKind};
use crate::error::ProveError;
use crate::sequent::Sequent;

pub(super) fn enumerate(
    s: &Sequent,
    mode: CalculusMode,
    budget: u64,
    limit: usize,
) -> Result<Vec<ProofTree>, ProveError> {
    let table = Table::for_sequent(s);
    let ant: Vec<Id> = s.antecedent().iter().map(|f| table.id(f)).collect();
    let goal = table.id(s.succedent());
    let mut e = Enumerator {
        table: &table,
        mode,
        budget,
        expanded: 0,
        underivable: HashSet::new(),
    };
    let proofs = e.all(&ant, goal, limit)?;
    Ok(proofs.iter().map(|p| to_tree(&table, p)).collect())
}

struct Enumerator<'a> {
    table: &'a Table,
    mode: CalculusMode,
    budget: u64,
    expanded: u64,
    underivable: HashSet<(Vec<Id>, Id)>,
}

impl Enumerator<'_> {
    fn all(&mut self, ant: &[Id], goal: Id, limit: usize) -> Result<Vec<Rc<Node>>, ProveError> {
        self.expanded += 1;
        if self.expanded > self.budget {
            return Err(ProveError::BudgetExhausted {
                budget: self.budget,
            });
        }
        let mut out = Vec::new();
        if limit == 0 || !self.table.balanced(ant, goal) {
            return Ok(out);
        }
        if self.underivable.contains(&(ant.to_vec(), goal)) {
            return Ok(out);
        }
        let node = |rule, premises| {
            Rc::new(Node {
                rule,
                ant: ant.to_vec(),
                succ: goal,
                premises,
            })
        };

        match self.table.kind(goal) {
            Kind::Atom(_) if ant == [goal] => out.push(node(Rule::Ax, vec![])),
            Kind::Over(result, arg) if self.mode.allows(RuleKind::OverR) => {
                let mut premise = ant.to_vec();
                premise.push(arg);
                for p in self.all(&premise, result, limit)? {
                    out.push(node(Rule::OverR, vec![p]));
                }
            }
            Kind::Under(arg, result) if self.mode.allows(RuleKind::UnderR) => {
                let mut premise = vec![arg];
                premise.extend_from_slice(ant);
                for p in self.all(&premise, result, limit)? {
                    out.push(node(Rule::UnderR, vec![p]));
                }
            }
            Kind::LinImp(arg, result) if self.mode.allows(RuleKind::LinImpR) => {
                for insert in 0..=ant.len() {
                    let mut premise = ant.to_vec();
                    premise.insert(insert, arg);
                    for p in self.all(&premise, result, limit - out.len())? {
                        out.push(node(Rule::LinImpR { insert }, vec![p]));
                    }
                    if out.len() >= limit {
                        break;
                    }
                }
            }
            _ => {}
        }

        let n = ant.len();
        'occurrences: for i in 0..n {
            if out.len() >= limit {
                break;
            }
            // (u, argument block, main premise)
            let splits: Vec<(Rule, Vec<Id>, Vec<Id>, Id)> = match self.table.kind(ant[i]) {
                Kind::Over(result, arg) => (i + 2..=n)
                    .map(|j| {
                        let mut main = ant[..i].to_vec();
                        main.push(result);
                        main.extend_from_slice(&ant[j..]);
                        (
                            Rule::OverL { u: i, t: j - i - 1 },
                            ant[i + 1..j].to_vec(),
                            main,
                            arg,
                        )
                    })
                    .collect(),
                Kind::Under(arg, result) => (0..i)
                    .rev()
                    .map(|k| {
                        let mut main = ant[..k].to_vec();
                        main.push(result);
                        main.extend_from_slice(&ant[i + 1..]);
                        (
                            Rule::UnderL { u: k, t: i - k },
                            ant[k..i].to_vec(),
                            main,
                            arg,
                        )
                    })
                    .collect(),
                _ => continue,
            };
            for (rule, block, main, arg) in splits {
                if !self.table.balanced(&block, arg) {
                    continue;
                }
                let args = self.all(&block, arg, limit)?;
                if args.is_empty() {
                    continue;
                }
                let mains = self.all(&main, goal, limit)?;
                for a in &args {
                    for m in &mains {
                        out.push(node(rule, vec![a.clone(), m.clone()]));
                        if out.len() >= limit {
                            break 'occurrences;
                        }
                    }
                }
            }
        }
        out.truncate(limit);
        if out.is_empty() {
            self.underivable.insert((ant.to_vec(), goal));
        }
        Ok(out)
    }
}
