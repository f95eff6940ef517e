#![allow(dead_code)]

use lambek_core::{CalculusMode, Formula, ProofTree, Rule, Sequent};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn atoms(names: &[&str]) -> Vec<Formula> {
    names.iter().map(|n| Formula::atom(n)).collect()
}

/// A random formula with at most `depth` nested connectives.
pub fn random_formula(rng: &mut ChaCha8Rng, atoms: &[Formula], depth: u32, lolli: bool) -> Formula {
    if depth == 0 || rng.gen_bool(0.4) {
        return atoms.choose(rng).unwrap().clone();
    }
    let l = random_formula(rng, atoms, depth - 1, lolli);
    let r = random_formula(rng, atoms, depth - 1, lolli);
    match rng.gen_range(0..if lolli { 3 } else { 2 }) {
        0 => Formula::over(l, r),
        1 => Formula::under(l, r),
        _ => Formula::linimp(l, r),
    }
}

pub fn random_sequent(
    rng: &mut ChaCha8Rng,
    atoms: &[Formula],
    max_len: usize,
    depth: u32,
) -> Sequent {
    let n = rng.gen_range(1..=max_len);
    let ant = (0..n)
        .map(|_| random_formula(rng, atoms, depth, true))
        .collect();
    Sequent::new(ant, random_formula(rng, atoms, depth, true)).unwrap()
}

/// Builds a derivable sequent by applying rules of `mode` forwards from
/// axioms, at most `depth` rule layers deep.
pub fn forward_derivable(
    rng: &mut ChaCha8Rng,
    atoms: &[Formula],
    mode: CalculusMode,
    depth: u32,
) -> (Vec<Formula>, Formula) {
    if depth == 0 || rng.gen_bool(0.15) {
        let p = atoms.choose(rng).unwrap().clone();
        return (vec![p.clone()], p);
    }
    let right_ok = mode != CalculusMode::SdlMinus;
    let lolli_ok = mode != CalculusMode::L;
    loop {
        match rng.gen_range(0..5) {
            0 | 1 => {
                let (t, b) = forward_derivable(rng, atoms, mode, depth - 1);
                let (x, c) = forward_derivable(rng, atoms, mode, depth - 1);
                let u = rng.gen_range(0..x.len());
                let a = x[u].clone();
                let mut ant = x[..u].to_vec();
                if rng.gen_bool(0.5) {
                    ant.push(Formula::over(a, b));
                    ant.extend(t);
                } else {
                    ant.extend(t);
                    ant.push(Formula::under(b, a));
                }
                ant.extend_from_slice(&x[u + 1..]);
                return (ant, c);
            }
            2 | 3 if right_ok => {
                let (mut x, a) = forward_derivable(rng, atoms, mode, depth - 1);
                if x.len() < 2 {
                    continue;
                }
                return if rng.gen_bool(0.5) {
                    let b = x.pop().unwrap();
                    (x, Formula::over(a, b))
                } else {
                    let b = x.remove(0);
                    (x, Formula::under(b, a))
                };
            }
            4 if lolli_ok => {
                let (mut x, a) = forward_derivable(rng, atoms, mode, depth - 1);
                if x.len() < 2 {
                    continue;
                }
                let k = rng.gen_range(0..x.len());
                let b = x.remove(k);
                return (x, Formula::linimp(b, a));
            }
            _ => {}
        }
    }
}

/// The conclusion a node's rule produces from its premises and rule data,
/// or `None` when they do not fit together. Axioms are checked separately.
pub fn rebuild(node: &ProofTree) -> Option<Sequent> {
    let p = &node.premises;
    let ant = |i: usize| p[i].conclusion.antecedent().to_vec();
    let succ = |i: usize| p[i].conclusion.succedent().clone();
    let (a, s) = match node.rule {
        Rule::Ax => {
            let s = &node.conclusion;
            return (p.is_empty()
                && s.antecedent().len() == 1
                && s.succedent().is_atom()
                && s.antecedent()[0] == *s.succedent())
            .then(|| s.clone());
        }
        Rule::OverL { u, t } | Rule::UnderL { u, t } => {
            if p.len() != 2 || ant(0).len() != t {
                return None;
            }
            let x = ant(1);
            let a = x.get(u)?.clone();
            let mut out = x[..u].to_vec();
            if matches!(node.rule, Rule::OverL { .. }) {
                out.push(Formula::over(a, succ(0)));
                out.extend(ant(0));
            } else {
                out.extend(ant(0));
                out.push(Formula::under(succ(0), a));
            }
            out.extend_from_slice(&x[u + 1..]);
            (out, succ(1))
        }
        Rule::OverR | Rule::UnderR => {
            if p.len() != 1 || ant(0).len() < 2 {
                return None;
            }
            let mut x = ant(0);
            if node.rule == Rule::OverR {
                let b = x.pop()?;
                (x, Formula::over(succ(0), b))
            } else {
                let b = x.remove(0);
                (x, Formula::under(b, succ(0)))
            }
        }
        Rule::LinImpR { insert } => {
            if p.len() != 1 || ant(0).len() < 2 || insert >= ant(0).len() {
                return None;
            }
            let mut x = ant(0);
            let b = x.remove(insert);
            (x, Formula::linimp(b, succ(0)))
        }
    };
    Sequent::new(a, s).ok()
}

pub fn node_at_mut<'a>(t: &'a mut ProofTree, path: &[usize]) -> &'a mut ProofTree {
    path.iter().fold(t, |n, &i| &mut n.premises[i])
}

/// Paths of every node, pre-order.
pub fn paths(t: &ProofTree) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for (i, p) in t.premises.iter().enumerate() {
        for mut rest in paths(p) {
            rest.insert(0, i);
            out.push(rest);
        }
    }
    out
}

/// Single-edit mutants that are genuinely wrong: the edited node no longer
/// follows from its premises, or a premise's antecedent is permuted.
pub fn mutants(t: &ProofTree) -> Vec<ProofTree> {
    let mut out = Vec::new();
    for path in paths(t) {
        let node = node_at_mut(&mut t.clone(), &path).clone();
        let mut edits: Vec<ProofTree> = Vec::new();
        let with_rule = |r: Rule| ProofTree {
            rule: r,
            ..node.clone()
        };
        match node.rule {
            Rule::OverL { u, t } => {
                for (du, dt) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                    if let (Some(u), Some(t)) = (u.checked_add_signed(du), t.checked_add_signed(dt))
                    {
                        edits.push(with_rule(Rule::OverL { u, t }));
                    }
                }
            }
            Rule::UnderL { u, t } => {
                for (du, dt) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                    if let (Some(u), Some(t)) = (u.checked_add_signed(du), t.checked_add_signed(dt))
                    {
                        edits.push(with_rule(Rule::UnderL { u, t }));
                    }
                }
            }
            Rule::LinImpR { insert } => {
                for d in [1, -1] {
                    if let Some(k) = insert.checked_add_signed(d) {
                        edits.push(with_rule(Rule::LinImpR { insert: k }));
                    }
                }
            }
            _ => {}
        }
        if node.premises.len() == 2 {
            let mut swapped = node.clone();
            swapped.premises.swap(0, 1);
            edits.push(swapped);
        }
        for e in edits {
            if rebuild(&e).as_ref() != Some(&e.conclusion) {
                let mut m = t.clone();
                *node_at_mut(&mut m, &path) = e;
                out.push(m);
            }
        }
        if !path.is_empty() {
            let ant = node.conclusion.antecedent();
            if let Some(i) = (1..ant.len()).find(|&i| ant[i - 1] != ant[i]) {
                let mut permuted = ant.to_vec();
                permuted.swap(i - 1, i);
                let mut m = t.clone();
                let target = node_at_mut(&mut m, &path);
                target.conclusion =
                    Sequent::new(permuted, node.conclusion.succedent().clone()).unwrap();
                out.push(m);
            }
        }
    }
    out
}
