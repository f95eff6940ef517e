//! The signed primitive-count invariant.
//!
//! `count(A, b)` is 1 for `A = b`, 0 for any other primitive, and
//! `count(B) - count(C)` for `B/C`, `C\B` and `C -o B`. Every derivable
//! sequent has equal counts on both sides, for every primitive.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{AddAssign, SubAssign};

use crate::formula::{Atom, Formula};
use crate::sequent::Sequent;

pub fn count(f: &Formula, b: &Atom) -> i64 {
    match f {
        Formula::Atom(a) => i64::from(a == b),
        Formula::Over(result, arg) => count(result, b) - count(arg, b),
        Formula::Under(arg, result) | Formula::LinImp(arg, result) => {
            count(result, b) - count(arg, b)
        }
    }
}

/// Signed counts for every primitive. Absent keys are 0; zero entries are
/// never stored, so equality is equality of the underlying functions.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct CountVector(BTreeMap<Atom, i64>);

impl CountVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn of(f: &Formula) -> Self {
        let mut v = CountVector::new();
        v.add_formula(f, 1);
        v
    }

    pub fn get(&self, b: &Atom) -> i64 {
        self.0.get(b).copied().unwrap_or(0)
    }

    pub fn add(&mut self, b: &Atom, delta: i64) {
        if delta == 0 {
            return;
        }
        let slot = self.0.entry(b.clone()).or_insert(0);
        *slot += delta;
        if *slot == 0 {
            self.0.remove(b);
        }
    }

    fn add_formula(&mut self, f: &Formula, sign: i64) {
        match f {
            Formula::Atom(a) => self.add(a, sign),
            Formula::Over(result, arg)
            | Formula::Under(arg, result)
            | Formula::LinImp(arg, result) => {
                self.add_formula(result, sign);
                self.add_formula(arg, -sign);
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, i64)> {
        self.0.iter().map(|(a, n)| (a, *n))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl AddAssign<&CountVector> for CountVector {
    fn add_assign(&mut self, rhs: &CountVector) {
        for (a, n) in rhs.iter() {
            self.add(a, n);
        }
    }
}

impl SubAssign<&CountVector> for CountVector {
    fn sub_assign(&mut self, rhs: &CountVector) {
        for (a, n) in rhs.iter() {
            self.add(a, -n);
        }
    }
}

impl fmt::Debug for CountVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

/// Antecedent and succedent count vectors.
pub fn sequent_counts(s: &Sequent) -> (CountVector, CountVector) {
    let mut lhs = CountVector::new();
    for f in s.antecedent() {
        lhs.add_formula(f, 1);
    }
    (lhs, CountVector::of(s.succedent()))
}

pub fn balanced(s: &Sequent) -> bool {
    let (lhs, rhs) = sequent_counts(s);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::sequent::parse_sequent;

    fn atom(s: &str) -> Atom {
        Atom::new(s).unwrap()
    }

    #[test]
    fn counts_follow_the_recursive_definition() {
        assert_eq!(count(&Formula::atom("b"), &atom("b")), 1);
        assert_eq!(count(&Formula::atom("c"), &atom("b")), 0);
        assert_eq!(
            count(&parse_formula("x/(c -o (b -o x))").unwrap(), &atom("x")),
            0
        );
        assert_eq!(
            count(&parse_formula("x/(c -o (b -o y))").unwrap(), &atom("x")),
            1
        );
        assert_eq!(
            count(&parse_formula("x/(c -o (b -o y))").unwrap(), &atom("b")),
            1
        );
        assert_eq!(count(&parse_formula("a/b").unwrap(), &atom("c")), 0);
        assert_eq!(count(&parse_formula("b\\a").unwrap(), &atom("b")), -1);
    }

    #[test]
    fn sequent_counts_detect_imbalance() {
        let (l, r) = sequent_counts(&parse_sequent("x => x").unwrap());
        assert_eq!(l, r);
        assert_eq!(l.get(&atom("x")), 1);

        let (l, r) = sequent_counts(&parse_sequent("x => y").unwrap());
        assert_eq!(l.get(&atom("x")), 1);
        assert_eq!(r.get(&atom("y")), 1);
        assert_ne!(l, r);
    }

    #[test]
    fn smallest_anbncn_sequent_is_balanced() {
        let s = parse_sequent(
            "x/(c -o (b -o x)), x/(c -o (b -o y)), (y/b)/y, (y/b)/z, (z/c)/z, z/c => x",
        )
        .unwrap();
        assert!(balanced(&s));
        let (l, _) = sequent_counts(&s);
        assert_eq!(l.get(&atom("x")), 1);
        assert_eq!(l.get(&atom("b")), 0);
        assert!(!balanced(
            &parse_sequent("x/(c -o (b -o y)), (y/b)/y, z/c => x").unwrap()
        ));
    }

    #[test]
    fn vector_arithmetic_drops_zeros() {
        let mut v = CountVector::of(&parse_formula("a/b").unwrap());
        v += &CountVector::of(&Formula::atom("b"));
        assert_eq!(v, CountVector::of(&Formula::atom("a")));
        v -= &CountVector::of(&Formula::atom("a"));
        assert!(v.is_zero());
    }
}
