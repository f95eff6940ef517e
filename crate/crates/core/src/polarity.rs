//! Polarity of subformula occurrences and subformula closure.
//!
//! The succedent is positive and each antecedent formula negative. For
//! `B/C`, `C\B` and `C -o B` the result `B` keeps the polarity of the
//! whole and the argument `C` takes the opposite one.

use std::collections::BTreeSet;
use std::ops::Not;

use crate::formula::Formula;
use crate::sequent::Sequent;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Not for Polarity {
    type Output = Polarity;

    fn not(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Antecedent(usize),
    Succedent,
}

/// Where an occurrence sits: the top-level formula, then a path of child
/// indices (0 = first constructor field, 1 = second).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Position {
    pub side: Side,
    pub path: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occurrence {
    pub formula: Formula,
    pub position: Position,
    pub polarity: Polarity,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PolarityReport {
    pub occurrences: Vec<Occurrence>,
    /// Positions of `-o` occurrences with negative polarity.
    pub negative_linimp: Vec<Position>,
}

impl PolarityReport {
    pub fn positive_linimps(&self) -> usize {
        self.occurrences
            .iter()
            .filter(|o| {
                matches!(o.formula, Formula::LinImp(..)) && o.polarity == Polarity::Positive
            })
            .count()
    }
}

pub fn polarity_report(s: &Sequent) -> PolarityReport {
    let mut report = PolarityReport::default();
    for (i, f) in s.antecedent().iter().enumerate() {
        walk(
            f,
            Side::Antecedent(i),
            &mut Vec::new(),
            Polarity::Negative,
            &mut report,
        );
    }
    walk(
        s.succedent(),
        Side::Succedent,
        &mut Vec::new(),
        Polarity::Positive,
        &mut report,
    );
    report
}

fn walk(f: &Formula, side: Side, path: &mut Vec<u8>, pol: Polarity, out: &mut PolarityReport) {
    let position = Position {
        side,
        path: path.clone(),
    };
    if matches!(f, Formula::LinImp(..)) && pol == Polarity::Negative {
        out.negative_linimp.push(position.clone());
    }
    out.occurrences.push(Occurrence {
        formula: f.clone(),
        position,
        polarity: pol,
    });
    // Child polarities in field order.
    let (first, second) = match f {
        Formula::Atom(_) => return,
        Formula::Over(result, arg) => ((&**result, pol), (&**arg, !pol)),
        Formula::Under(arg, result) | Formula::LinImp(arg, result) => {
            ((&**arg, !pol), (&**result, pol))
        }
    };
    for (k, (child, p)) in [first, second].into_iter().enumerate() {
        path.push(k as u8);
        walk(child, side, path, p, out);
        path.pop();
    }
}

/// All subformulas of `f`, including `f`.
pub fn formula_subformulas(f: &Formula) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    collect(f, &mut out);
    out
}

fn collect(f: &Formula, out: &mut BTreeSet<Formula>) {
    if !out.insert(f.clone()) {
        return;
    }
    if let Some((l, r)) = f.children() {
        collect(l, out);
        collect(r, out);
    }
}

/// Closure of the sequent's formulas under immediate subformulas.
pub fn subformulas(s: &Sequent) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    for f in s.formulas() {
        collect(f, &mut out);
    }
    out
}
