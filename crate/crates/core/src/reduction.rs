//! 3-Partition instances and their encoding as SDL grammars.
//!
//! For an instance with `3m` sizes and bound `N` the grammar has terminals
//! `v, w1, ..., w3m` and start type `a`:
//!
//! * `v` gets `a/(b1 -o b1 -o b1 -o ... bm -o cm -o ... -o d)`, one `bj`
//!   hypothesis three times and one `cj` hypothesis `N` times for each `j`;
//! * `wi` (`i < 3m`) gets, for each `j`, `d` over `d, bj, cj^s(i)` (written
//!   `d/d•bj•cj^s(i)`), and `w3m` gets `d/bj•cj^s(3m)`.
//!
//! The word `v w1 ... w3m` is accepted iff the instance is solvable: an
//! accepting assignment must pick, for each `j`, exactly three words with
//! a `bj` whose `cj` counts add up to `N`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{Atom, Formula};
use crate::grammar::Grammar;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThreePartitionInstance {
    pub m: usize,
    #[serde(rename = "N")]
    pub bound: u64,
    pub sizes: Vec<u64>,
}

impl ThreePartitionInstance {
    pub fn new(m: usize, bound: u64, sizes: Vec<u64>) -> Self {
        ThreePartitionInstance { m, bound, sizes }
    }
}

/// A failed instance constraint. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceViolation {
    NoTriples,
    WrongLength { expected: usize, found: usize },
    TooSmall { index: usize, size: u64, bound: u64 },
    TooLarge { index: usize, size: u64, bound: u64 },
    WrongSum { expected: u64, found: u64 },
}

impl fmt::Display for InstanceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceViolation::NoTriples => f.write_str("m must be positive"),
            InstanceViolation::WrongLength { expected, found } => {
                write!(f, "expected 3m = {expected} sizes, found {found}")
            }
            InstanceViolation::TooSmall { index, size, bound } => {
                write!(
                    f,
                    "size {index} is {size}, not strictly greater than N/4 = {bound}/4"
                )
            }
            InstanceViolation::TooLarge { index, size, bound } => {
                write!(
                    f,
                    "size {index} is {size}, not strictly less than N/2 = {bound}/2"
                )
            }
            InstanceViolation::WrongSum { expected, found } => {
                write!(f, "sizes sum to {found}, expected m*N = {expected}")
            }
        }
    }
}

pub fn validate_instance(inst: &ThreePartitionInstance) -> Vec<InstanceViolation> {
    let mut out = Vec::new();
    if inst.m == 0 {
        out.push(InstanceViolation::NoTriples);
    }
    if inst.sizes.len() != 3 * inst.m {
        out.push(InstanceViolation::WrongLength {
            expected: 3 * inst.m,
            found: inst.sizes.len(),
        });
    }
    let bound = inst.bound;
    for (i, &size) in inst.sizes.iter().enumerate() {
        if 4 * size <= bound {
            out.push(InstanceViolation::TooSmall {
                index: i + 1,
                size,
                bound,
            });
        }
        if 2 * size >= bound {
            out.push(InstanceViolation::TooLarge {
                index: i + 1,
                size,
                bound,
            });
        }
    }
    let total: u64 = inst.sizes.iter().sum();
    if total != inst.m as u64 * bound {
        out.push(InstanceViolation::WrongSum {
            expected: inst.m as u64 * bound,
            found: total,
        });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("invalid instance: {}", join(.0))]
    InvalidInstance(Vec<InstanceViolation>),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("assignment does not decode to a partition: {0}")]
    Decode(String),
}

fn join(vs: &[InstanceViolation]) -> String {
    vs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

fn ensure_valid(inst: &ThreePartitionInstance) -> Result<(), ReductionError> {
    let violations = validate_instance(inst);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(ReductionError::InvalidInstance(violations))
    }
}

/// `m` disjoint triples of 1-based indices. Each triple is sorted and the
/// triples are ordered by their smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    triples: Vec<[usize; 3]>,
}

impl Partition {
    pub fn new(mut triples: Vec<[usize; 3]>) -> Self {
        for t in &mut triples {
            t.sort_unstable();
        }
        triples.sort_unstable();
        Partition { triples }
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    /// `k(i)`: the 1-based triple index containing element `i`.
    pub fn triple_of(&self, i: usize) -> Option<usize> {
        self.triples
            .iter()
            .position(|t| t.contains(&i))
            .map(|j| j + 1)
    }

    pub fn check(&self, inst: &ThreePartitionInstance) -> Result<(), ReductionError> {
        let bad = |msg: String| Err(ReductionError::InvalidPartition(msg));
        if self.triples.len() != inst.m {
            return bad(format!(
                "expected {} triples, found {}",
                inst.m,
                self.triples.len()
            ));
        }
        let mut seen = vec![false; inst.sizes.len()];
        for t in &self.triples {
            for &i in t {
                if i == 0 || i > inst.sizes.len() {
                    return bad(format!("index {i} out of range"));
                }
                if std::mem::replace(&mut seen[i - 1], true) {
                    return bad(format!("index {i} used twice"));
                }
            }
            let sum: u64 = t.iter().map(|&i| inst.sizes[i - 1]).sum();
            if sum != inst.bound {
                return bad(format!(
                    "triple {t:?} sums to {sum}, expected {}",
                    inst.bound
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct ReductionOutput {
    pub grammar: Grammar,
    pub word: Vec<String>,
}

impl ReductionOutput {
    pub fn word_text(&self) -> String {
        self.word.join(" ")
    }
}

fn atom(name: &str) -> Formula {
    Formula::atom(name)
}

/// `B1 -o (B2 -o ... (Bn -o result))`, first listed outermost.
fn linimp_chain(hyps: &[Formula], result: Formula) -> Formula {
    hyps.iter()
        .rev()
        .fold(result, |acc, h| Formula::linimp(h.clone(), acc))
}

/// `result/Bn•...•B1` for `written = [Bn, ..., B1]`: `(...(result/B1)...)/Bn`.
fn over_chain(result: Formula, written: &[Formula]) -> Formula {
    written
        .iter()
        .rev()
        .fold(result, |acc, b| Formula::over(acc, b.clone()))
}

fn v_type(inst: &ThreePartitionInstance) -> Formula {
    let mut hyps = Vec::new();
    for j in 1..=inst.m {
        hyps.extend(std::iter::repeat_n(atom(&format!("b{j}")), 3));
    }
    for j in 1..=inst.m {
        hyps.extend(std::iter::repeat_n(
            atom(&format!("c{j}")),
            inst.bound as usize,
        ));
    }
    Formula::over(atom("a"), linimp_chain(&hyps, atom("d")))
}

/// The type of `w<i>` (1-based) that places element `i` in triple `j`.
fn w_type(inst: &ThreePartitionInstance, i: usize, j: usize) -> Formula {
    let mut written = Vec::new();
    if i < 3 * inst.m {
        written.push(atom("d"));
    }
    written.push(atom(&format!("b{j}")));
    written.extend(std::iter::repeat_n(
        atom(&format!("c{j}")),
        inst.sizes[i - 1] as usize,
    ));
    over_chain(atom("d"), &written)
}

pub fn build_reduction(inst: &ThreePartitionInstance) -> Result<ReductionOutput, ReductionError> {
    ensure_valid(inst)?;
    let mut entries = vec![("v".to_string(), vec![v_type(inst)])];
    let mut word = vec!["v".to_string()];
    for i in 1..=3 * inst.m {
        let name = format!("w{i}");
        entries.push((
            name.clone(),
            (1..=inst.m).map(|j| w_type(inst, i, j)).collect(),
        ));
        word.push(name);
    }
    let grammar = Grammar::new(Atom::new("a").expect("valid atom"), entries)
        .expect("reduction lexicon is well formed");
    Ok(ReductionOutput { grammar, word })
}

/// Brute-force search for the lexicographically least partition.
pub fn solve_3partition(inst: &ThreePartitionInstance) -> Option<Partition> {
    if !validate_instance(inst).is_empty() {
        return None;
    }
    let mut used = vec![false; inst.sizes.len()];
    let mut triples = Vec::with_capacity(inst.m);
    if place(&inst.sizes, inst.bound, &mut used, &mut triples) {
        Some(Partition::new(triples))
    } else {
        None
    }
}

fn place(sizes: &[u64], bound: u64, used: &mut [bool], triples: &mut Vec<[usize; 3]>) -> bool {
    let Some(i) = used.iter().position(|u| !u) else {
        return true;
    };
    used[i] = true;
    for j in i + 1..sizes.len() {
        if used[j] || sizes[i] + sizes[j] >= bound {
            continue;
        }
        used[j] = true;
        for k in j + 1..sizes.len() {
            if used[k] || sizes[i] + sizes[j] + sizes[k] != bound {
                continue;
            }
            used[k] = true;
            triples.push([i + 1, j + 1, k + 1]);
            if place(sizes, bound, used, triples) {
                return true;
            }
            triples.pop();
            used[k] = false;
        }
        used[j] = false;
    }
    used[i] = false;
    false
}

/// The lexical assignment for `v w1 ... w3m` that follows `p`: every `wi`
/// takes its entry for the triple containing `i`.
pub fn partition_to_assignment(
    inst: &ThreePartitionInstance,
    p: &Partition,
) -> Result<Vec<Formula>, ReductionError> {
    ensure_valid(inst)?;
    p.check(inst)?;
    let mut out = vec![v_type(inst)];
    for i in 1..=3 * inst.m {
        let j = p
            .triple_of(i)
            .expect("checked partition covers every index");
        out.push(w_type(inst, i, j));
    }
    Ok(out)
}

/// Reads the partition back off an accepting assignment: element `i` joins
/// triple `j` when its type mentions `bj`.
pub fn assignment_to_partition(
    inst: &ThreePartitionInstance,
    assignment: &[Formula],
) -> Result<Partition, ReductionError> {
    ensure_valid(inst)?;
    let bad = |msg: String| Err(ReductionError::Decode(msg));
    if assignment.len() != 3 * inst.m + 1 {
        return bad(format!(
            "expected {} types, found {}",
            3 * inst.m + 1,
            assignment.len()
        ));
    }
    if assignment[0] != v_type(inst) {
        return bad("first type is not the entry of v".into());
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, ty) in assignment.iter().enumerate().skip(1) {
        let mut js: Vec<usize> = ty
            .atoms()
            .iter()
            .filter_map(|a| a.as_str().strip_prefix('b').and_then(|n| n.parse().ok()))
            .collect();
        js.dedup();
        let [j] = js[..] else {
            return bad(format!("type of w{i} does not name exactly one triple"));
        };
        if j == 0 || j > inst.m || *ty != w_type(inst, i, j) {
            return bad(format!("type of w{i} is not one of its lexical entries"));
        }
        groups.entry(j).or_default().push(i);
    }
    let mut triples = Vec::with_capacity(inst.m);
    for (j, members) in groups {
        let [x, y, z] = members[..] else {
            return bad(format!("triple {j} has {} members", members.len()));
        };
        triples.push([x, y, z]);
    }
    let p = Partition::new(triples);
    p.check(inst)
        .map_err(|e| ReductionError::Decode(e.to_string()))?;
    Ok(p)
}

/// Every valid instance with `m <= max_m` and `N <= max_bound`, sizes taken
/// as ordered sequences.
pub fn enumerate_instances(max_m: usize, max_bound: u64) -> Vec<ThreePartitionInstance> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        for bound in 1..=max_bound {
            let lo = bound / 4 + 1;
            let hi = (bound - 1) / 2;
            if lo > hi {
                continue;
            }
            let mut sizes = Vec::with_capacity(3 * m);
            extend_sizes(m, bound, lo, hi, &mut sizes, &mut out);
        }
    }
    out
}

fn extend_sizes(
    m: usize,
    bound: u64,
    lo: u64,
    hi: u64,
    sizes: &mut Vec<u64>,
    out: &mut Vec<ThreePartitionInstance>,
) {
    let total = m as u64 * bound;
    let sum: u64 = sizes.iter().sum();
    let left = (3 * m - sizes.len()) as u64;
    if left == 0 {
        if sum == total {
            out.push(ThreePartitionInstance::new(m, bound, sizes.clone()));
        }
        return;
    }
    if sum + left * lo > total || sum + left * hi < total {
        return;
    }
    for s in lo..=hi {
        sizes.push(s);
        extend_sizes(m, bound, lo, hi, sizes, out);
        sizes.pop();
    }
}
