//! Goal-directed search with lazily placed hypotheses.
//!
//! A search state is `(fixed, hyps, goal)`: an ordered block of formulas
//! plus a multiset of `-oR` hypotheses that may still be placed anywhere
//! among them. The state is derivable iff some interleaving of `hyps` into
//! `fixed` gives a derivable sequent. Hypotheses receive concrete positions
//! only when a left rule decides which side of a split they belong to; for
//! atomic hypotheses that choice is forced by the count invariant.
//!
//! Right rules are invertible in every mode that has them, so when the
//! goal's right rule is enabled it is the only rule tried. `/R` and `\R`
//! pin the new hypothesis at one end, so pending `-o` hypotheses are
//! placed explicitly before applying them.
//!
//! Results are memoised per state (failures and proofs), which is sound
//! because cut-free backward search is context-free in the state.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use super::table::{Id, Kind, Table};
use super::{CalculusMode, ProofTree, Rule, RuleKind, SearchStats};
use crate::error::ProveError;
use crate::sequent::Sequent;

/// Where an element of a concrete antecedent came from in its state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Origin {
    Fixed(usize),
    Hyp(usize),
}

/// A proof over interned formulas.
pub(super) struct Node {
    pub(super) rule: Rule,
    pub(super) ant: Vec<Id>,
    pub(super) succ: Id,
    pub(super) premises: Vec<Rc<Node>>,
}

pub(super) fn to_tree(table: &Table, node: &Node) -> ProofTree {
    let ant = node
        .ant
        .iter()
        .map(|&id| table.formula(id).clone())
        .collect();
    let conclusion = Sequent::new(ant, table.formula(node.succ).clone())
        .expect("search never builds an empty antecedent");
    ProofTree {
        rule: node.rule,
        conclusion,
        premises: node.premises.iter().map(|p| to_tree(table, p)).collect(),
    }
}

struct Found {
    proof: Rc<Node>,
    /// Parallel to `proof.ant`.
    origins: Vec<Origin>,
}

#[derive(PartialEq, Eq, Hash)]
struct Key {
    fixed: Box<[Id]>,
    hyps: Box<[Id]>,
    goal: Id,
}

#[derive(Clone, Copy)]
struct Functor {
    id: Id,
    origin: Origin,
    over: bool,
    result: Id,
    arg: Id,
}

struct Search<'a> {
    table: &'a Table,
    mode: CalculusMode,
    budget: u64,
    expanded: u64,
    stats: &'a mut SearchStats,
    failed: HashSet<Key>,
    proved: HashMap<Key, Rc<Found>>,
}

pub(super) fn prove(
    s: &Sequent,
    mode: CalculusMode,
    budget: u64,
    stats: &mut SearchStats,
) -> Result<Option<ProofTree>, ProveError> {
    let table = Table::for_sequent(s);
    let fixed: Vec<Id> = s.antecedent().iter().map(|f| table.id(f)).collect();
    let goal = table.id(s.succedent());
    let mut search = Search {
        table: &table,
        mode,
        budget,
        expanded: 0,
        stats,
        failed: HashSet::new(),
        proved: HashMap::new(),
    };
    let found = search.solve(&fixed, &[], goal, 1)?;
    Ok(found.map(|f| to_tree(&table, &f.proof)))
}

impl Search<'_> {
    fn solve(
        &mut self,
        fixed: &[Id],
        hyps: &[Id],
        goal: Id,
        depth: u64,
    ) -> Result<Option<Rc<Found>>, ProveError> {
        self.expanded += 1;
        self.stats.nodes_expanded += 1;
        if self.expanded > self.budget {
            return Err(ProveError::BudgetExhausted {
                budget: self.budget,
            });
        }
        self.stats.max_depth = self.stats.max_depth.max(depth);
        if !self.table.balanced(fixed.iter().chain(hyps), goal) {
            self.stats.pruned_by_count += 1;
            return Ok(None);
        }
        let key = Key {
            fixed: fixed.into(),
            hyps: hyps.into(),
            goal,
        };
        if self.failed.contains(&key) {
            self.stats.cache_hits += 1;
            return Ok(None);
        }
        if let Some(found) = self.proved.get(&key) {
            self.stats.cache_hits += 1;
            return Ok(Some(found.clone()));
        }
        match self.expand(fixed, hyps, goal, depth)? {
            Some(found) => {
                let found = Rc::new(found);
                self.proved.insert(key, found.clone());
                Ok(Some(found))
            }
            None => {
                self.failed.insert(key);
                Ok(None)
            }
        }
    }

    fn expand(
        &mut self,
        fixed: &[Id],
        hyps: &[Id],
        goal: Id,
        depth: u64,
    ) -> Result<Option<Found>, ProveError> {
        let kind = self.table.kind(goal);
        if let Kind::Atom(_) = kind {
            if fixed.len() + hyps.len() == 1 {
                let (item, origin) = match fixed.first() {
                    Some(&f) => (f, Origin::Fixed(0)),
                    None => (hyps[0], Origin::Hyp(0)),
                };
                if item == goal {
                    let proof = Node {
                        rule: Rule::Ax,
                        ant: vec![goal],
                        succ: goal,
                        premises: vec![],
                    };
                    return Ok(Some(Found {
                        proof: Rc::new(proof),
                        origins: vec![origin],
                    }));
                }
            }
        }
        match kind {
            Kind::Over(result, arg) if self.mode.allows(RuleKind::OverR) => {
                return self.right_slash(fixed, hyps, goal, result, arg, true, depth);
            }
            Kind::Under(arg, result) if self.mode.allows(RuleKind::UnderR) => {
                return self.right_slash(fixed, hyps, goal, result, arg, false, depth);
            }
            Kind::LinImp(arg, result) if self.mode.allows(RuleKind::LinImpR) => {
                return self.right_linimp(fixed, hyps, goal, result, arg, depth);
            }
            _ => {}
        }
        self.left(fixed, hyps, goal, depth)
    }

    #[allow(clippy::too_many_arguments)]
    fn right_slash(
        &mut self,
        fixed: &[Id],
        hyps: &[Id],
        goal: Id,
        result: Id,
        arg: Id,
        over: bool,
        depth: u64,
    ) -> Result<Option<Found>, ProveError> {
        let mut arrangements = Arrangements::new(fixed.len(), hyps);
        while let Some(order) = arrangements.next_order() {
            let items: Vec<Id> = order
                .iter()
                .map(|o| match *o {
                    Origin::Fixed(i) => fixed[i],
                    Origin::Hyp(h) => hyps[h],
                })
                .collect();
            let mut premise = Vec::with_capacity(items.len() + 1);
            if over {
                premise.extend_from_slice(&items);
                premise.push(arg);
            } else {
                premise.push(arg);
                premise.extend_from_slice(&items);
            }
            if let Some(found) = self.solve(&premise, &[], result, depth + 1)? {
                let rule = if over { Rule::OverR } else { Rule::UnderR };
                let proof = Node {
                    rule,
                    ant: items,
                    succ: goal,
                    premises: vec![found.proof.clone()],
                };
                return Ok(Some(Found {
                    proof: Rc::new(proof),
                    origins: order,
                }));
            }
        }
        Ok(None)
    }

    fn right_linimp(
        &mut self,
        fixed: &[Id],
        hyps: &[Id],
        goal: Id,
        result: Id,
        arg: Id,
        depth: u64,
    ) -> Result<Option<Found>, ProveError> {
        let q = hyps.partition_point(|&h| h < arg);
        let mut extended = hyps.to_vec();
        extended.insert(q, arg);
        let Some(found) = self.solve(fixed, &extended, result, depth + 1)? else {
            return Ok(None);
        };
        let insert = found
            .origins
            .iter()
            .position(|&o| o == Origin::Hyp(q))
            .expect("discharged hypothesis is placed in the premise");
        let mut ant = found.proof.ant.clone();
        ant.remove(insert);
        let origins = found
            .origins
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != insert)
            .map(|(_, &o)| match o {
                Origin::Hyp(h) if h > q => Origin::Hyp(h - 1),
                o => o,
            })
            .collect();
        let proof = Node {
            rule: Rule::LinImpR { insert },
            ant,
            succ: goal,
            premises: vec![found.proof.clone()],
        };
        Ok(Some(Found {
            proof: Rc::new(proof),
            origins,
        }))
    }

    fn left(
        &mut self,
        fixed: &[Id],
        hyps: &[Id],
        goal: Id,
        depth: u64,
    ) -> Result<Option<Found>, ProveError> {
        let n = fixed.len();
        let all: Vec<usize> = (0..hyps.len()).collect();
        for i in 0..n {
            match self.table.kind(fixed[i]) {
                Kind::Over(result, arg) => {
                    let f = Functor {
                        id: fixed[i],
                        origin: Origin::Fixed(i),
                        over: true,
                        result,
                        arg,
                    };
                    for j in i + 1..=n {
                        let found =
                            self.try_left(fixed, hyps, goal, depth, f, (i + 1, j), (i, j), &all)?;
                        if found.is_some() {
                            return Ok(found);
                        }
                    }
                }
                Kind::Under(arg, result) => {
                    let f = Functor {
                        id: fixed[i],
                        origin: Origin::Fixed(i),
                        over: false,
                        result,
                        arg,
                    };
                    for k in (0..=i).rev() {
                        let found =
                            self.try_left(fixed, hyps, goal, depth, f, (k, i), (k, i + 1), &all)?;
                        if found.is_some() {
                            return Ok(found);
                        }
                    }
                }
                _ => {}
            }
        }
        for h in 0..hyps.len() {
            if h > 0 && hyps[h] == hyps[h - 1] {
                continue;
            }
            let pool: Vec<usize> = (0..hyps.len()).filter(|&x| x != h).collect();
            match self.table.kind(hyps[h]) {
                Kind::Over(result, arg) => {
                    let f = Functor {
                        id: hyps[h],
                        origin: Origin::Hyp(h),
                        over: true,
                        result,
                        arg,
                    };
                    for g in 0..=n {
                        for j in g..=n {
                            let found =
                                self.try_left(fixed, hyps, goal, depth, f, (g, j), (g, j), &pool)?;
                            if found.is_some() {
                                return Ok(found);
                            }
                        }
                    }
                }
                Kind::Under(arg, result) => {
                    let f = Functor {
                        id: hyps[h],
                        origin: Origin::Hyp(h),
                        over: false,
                        result,
                        arg,
                    };
                    for g in 0..=n {
                        for k in (0..=g).rev() {
                            let found =
                                self.try_left(fixed, hyps, goal, depth, f, (k, g), (k, g), &pool)?;
                            if found.is_some() {
                                return Ok(found);
                            }
                        }
                    }
                }
                _ => {}
            }
        }
        Ok(None)
    }

    /// Applies a left rule whose argument block is `fixed[block.0..block.1]`
    /// plus some hypotheses from `pool`, and whose main premise replaces
    /// `fixed[cut.0..cut.1]` (functor included when it is fixed) by the
    /// functor's result.
    #[allow(clippy::too_many_arguments)]
    fn try_left(
        &mut self,
        fixed: &[Id],
        hyps: &[Id],
        goal: Id,
        depth: u64,
        functor: Functor,
        block: (usize, usize),
        cut: (usize, usize),
        pool: &[usize],
    ) -> Result<Option<Found>, ProveError> {
        let table = self.table;
        let block_items = &fixed[block.0..block.1];
        let mut need = table.counts(functor.arg).to_vec();
        for &id in block_items {
            for (slot, c) in need.iter_mut().zip(table.counts(id)) {
                *slot -= c;
            }
        }
        let choices = choose_hypotheses(table, hyps, pool, &need);
        if choices.is_empty() {
            self.stats.pruned_by_count += 1;
            return Ok(None);
        }
        for (chosen, rest) in choices {
            if block_items.is_empty() && chosen.is_empty() {
                continue;
            }
            let arg_hyps: Vec<Id> = chosen.iter().map(|&x| hyps[x]).collect();
            let Some(arg) = self.solve(block_items, &arg_hyps, functor.arg, depth + 1)? else {
                continue;
            };
            let mut outer_fixed = fixed[..cut.0].to_vec();
            outer_fixed.push(functor.result);
            outer_fixed.extend_from_slice(&fixed[cut.1..]);
            let rest_hyps: Vec<Id> = rest.iter().map(|&x| hyps[x]).collect();
            let Some(main) = self.solve(&outer_fixed, &rest_hyps, goal, depth + 1)? else {
                continue;
            };
            return Ok(Some(assemble(
                functor, block, cut, &chosen, &rest, &arg, &main, goal,
            )));
        }
        Ok(None)
    }
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    functor: Functor,
    block: (usize, usize),
    cut: (usize, usize),
    chosen: &[usize],
    rest: &[usize],
    arg: &Found,
    main: &Found,
    goal: Id,
) -> Found {
    let (s, e) = cut;
    let map_main = |o: Origin| match o {
        Origin::Fixed(x) if x < s => Origin::Fixed(x),
        Origin::Fixed(x) if x == s => functor.origin,
        Origin::Fixed(x) => Origin::Fixed(x - s - 1 + e),
        Origin::Hyp(y) => Origin::Hyp(rest[y]),
    };
    let map_arg = |o: Origin| match o {
        Origin::Fixed(x) => Origin::Fixed(block.0 + x),
        Origin::Hyp(y) => Origin::Hyp(chosen[y]),
    };
    let p = main
        .origins
        .iter()
        .position(|&o| o == Origin::Fixed(s))
        .expect("functor result occurs in the main premise");
    let len = main.proof.ant.len() + arg.proof.ant.len();
    let mut ant = Vec::with_capacity(len);
    let mut origins = Vec::with_capacity(len);
    for idx in 0..p {
        ant.push(main.proof.ant[idx]);
        origins.push(map_main(main.origins[idx]));
    }
    let push_arg = |ant: &mut Vec<Id>, origins: &mut Vec<Origin>| {
        ant.extend_from_slice(&arg.proof.ant);
        origins.extend(arg.origins.iter().map(|&o| map_arg(o)));
    };
    if functor.over {
        ant.push(functor.id);
        origins.push(functor.origin);
        push_arg(&mut ant, &mut origins);
    } else {
        push_arg(&mut ant, &mut origins);
        ant.push(functor.id);
        origins.push(functor.origin);
    }
    for idx in p + 1..main.proof.ant.len() {
        ant.push(main.proof.ant[idx]);
        origins.push(map_main(main.origins[idx]));
    }
    let t = arg.proof.ant.len();
    let rule = if functor.over {
        Rule::OverL { u: p, t }
    } else {
        Rule::UnderL { u: p, t }
    };
    let proof = Node {
        rule,
        ant,
        succ: goal,
        premises: vec![arg.proof.clone(), main.proof.clone()],
    };
    Found {
        proof: Rc::new(proof),
        origins,
    }
}

/// Sub-multisets of `hyps[pool]` whose count vector equals `need`, as
/// `(chosen, rest)` index lists in ascending order. Complex hypotheses are
/// enumerated; atomic ones are then determined by the residual counts.
fn choose_hypotheses(
    table: &Table,
    hyps: &[Id],
    pool: &[usize],
    need: &[i32],
) -> Vec<(Vec<usize>, Vec<usize>)> {
    // Runs of equal formulas, in pool order.
    let mut groups: Vec<(Id, Vec<usize>)> = Vec::new();
    for &x in pool {
        match groups.last_mut() {
            Some((id, members)) if *id == hyps[x] => members.push(x),
            _ => groups.push((hyps[x], vec![x])),
        }
    }
    let mut atom_group = vec![None; table.width()];
    let mut complex = Vec::new();
    for (g, (id, _)) in groups.iter().enumerate() {
        match table.kind(*id) {
            Kind::Atom(p) => atom_group[p] = Some(g),
            _ => complex.push(g),
        }
    }

    let mut out = Vec::new();
    let mut take = vec![0usize; groups.len()];
    loop {
        let mut residual = need.to_vec();
        for &g in &complex {
            let counts = table.counts(groups[g].0);
            for (slot, c) in residual.iter_mut().zip(counts) {
                *slot -= c * take[g] as i32;
            }
        }
        let feasible = residual
            .iter()
            .enumerate()
            .all(|(p, &r)| match atom_group[p] {
                Some(g) => r >= 0 && (r as usize) <= groups[g].1.len(),
                None => r == 0,
            });
        if feasible {
            for (p, &r) in residual.iter().enumerate() {
                if let Some(g) = atom_group[p] {
                    take[g] = r as usize;
                }
            }
            let mut chosen = Vec::new();
            let mut rest = Vec::new();
            for (g, (_, members)) in groups.iter().enumerate() {
                chosen.extend_from_slice(&members[..take[g]]);
                rest.extend_from_slice(&members[take[g]..]);
            }
            chosen.sort_unstable();
            rest.sort_unstable();
            out.push((chosen, rest));
        }
        // Advance the odometer over complex groups.
        let mut advanced = false;
        for &g in &complex {
            if take[g] < groups[g].1.len() {
                take[g] += 1;
                advanced = true;
                break;
            }
            take[g] = 0;
        }
        if !advanced {
            return out;
        }
    }
}

/// Distinct interleavings of `n` ordered fixed items with a sorted
/// multiset of hypotheses, in lexicographic label order.
struct Arrangements<'h> {
    labels: Vec<u64>,
    hyps: &'h [Id],
    started: bool,
}

impl<'h> Arrangements<'h> {
    fn new(n: usize, hyps: &'h [Id]) -> Self {
        let mut labels = vec![0u64; n];
        labels.extend(hyps.iter().map(|&h| u64::from(h) + 1));
        Arrangements {
            labels,
            hyps,
            started: false,
        }
    }

    fn next_order(&mut self) -> Option<Vec<Origin>> {
        if self.started && !next_permutation(&mut self.labels) {
            return None;
        }
        self.started = true;
        let mut next_fixed = 0;
        let mut used = vec![false; self.hyps.len()];
        let order = self
            .labels
            .iter()
            .map(|&l| {
                if l == 0 {
                    next_fixed += 1;
                    Origin::Fixed(next_fixed - 1)
                } else {
                    let id = (l - 1) as Id;
                    let start = self.hyps.partition_point(|&h| h < id);
                    let h = (start..self.hyps.len())
                        .find(|&h| !used[h])
                        .expect("label has a hypothesis");
                    used[h] = true;
                    Origin::Hyp(h)
                }
            })
            .collect();
        Some(order)
    }
}

fn next_permutation(v: &mut [u64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len())
        .rev()
        .find(|&j| v[j] > v[i])
        .expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrangements_are_distinct_interleavings() {
        let hyps = [3, 3, 5];
        let mut arr = Arrangements::new(2, &hyps);
        let mut seen = Vec::new();
        while let Some(order) = arr.next_order() {
            seen.push(order);
        }
        // 5! / (2! * 2!) distinct label sequences.
        assert_eq!(seen.len(), 30);
        for order in &seen {
            let fixed: Vec<usize> = order
                .iter()
                .filter_map(|o| match o {
                    Origin::Fixed(i) => Some(*i),
                    _ => None,
                })
                .collect();
            assert_eq!(fixed, vec![0, 1]);
        }
    }

    #[test]
    fn no_hypotheses_means_one_arrangement() {
        let mut arr = Arrangements::new(3, &[]);
        assert_eq!(
            arr.next_order(),
            Some(vec![Origin::Fixed(0), Origin::Fixed(1), Origin::Fixed(2)])
        );
        assert_eq!(arr.next_order(), None);
    }
}
