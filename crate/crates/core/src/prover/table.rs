//! Hash-consed formulas for one search. Every formula met during cut-free
//! search is a subformula of the goal, so the table is filled once up front.

use std::collections::HashMap;

use crate::formula::{Atom, Formula};
use crate::sequent::Sequent;

pub(crate) type Id = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kind {
    Atom(usize),
    Over(Id, Id),
    Under(Id, Id),
    LinImp(Id, Id),
}

pub(crate) struct Table {
    kinds: Vec<Kind>,
    counts: Vec<Box<[i32]>>,
    formulas: Vec<Formula>,
    index: HashMap<Formula, Id>,
    prims: Vec<Atom>,
    prim_index: HashMap<Atom, usize>,
}

impl Table {
    pub(crate) fn for_sequent(s: &Sequent) -> Table {
        let mut prims: Vec<Atom> = s.formulas().flat_map(|f| f.atoms()).cloned().collect();
        prims.sort();
        prims.dedup();
        let prim_index = prims
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect();
        let mut table = Table {
            kinds: Vec::new(),
            counts: Vec::new(),
            formulas: Vec::new(),
            index: HashMap::new(),
            prims,
            prim_index,
        };
        for f in s.formulas() {
            table.intern(f);
        }
        table
    }

    pub(crate) fn intern(&mut self, f: &Formula) -> Id {
        if let Some(&id) = self.index.get(f) {
            return id;
        }
        let width = self.prims.len();
        let (kind, counts) = match f {
            Formula::Atom(a) => {
                let p = self.prim_index[a];
                let mut c = vec![0; width];
                c[p] = 1;
                (Kind::Atom(p), c)
            }
            Formula::Over(result, arg) => {
                let (r, a) = (self.intern(result), self.intern(arg));
                (Kind::Over(r, a), self.diff(r, a))
            }
            Formula::Under(arg, result) => {
                let (a, r) = (self.intern(arg), self.intern(result));
                (Kind::Under(a, r), self.diff(r, a))
            }
            Formula::LinImp(arg, result) => {
                let (a, r) = (self.intern(arg), self.intern(result));
                (Kind::LinImp(a, r), self.diff(r, a))
            }
        };
        let id = self.kinds.len() as Id;
        self.kinds.push(kind);
        self.counts.push(counts.into_boxed_slice());
        self.formulas.push(f.clone());
        self.index.insert(f.clone(), id);
        id
    }

    fn diff(&self, plus: Id, minus: Id) -> Vec<i32> {
        self.counts[plus as usize]
            .iter()
            .zip(self.counts[minus as usize].iter())
            .map(|(p, m)| p - m)
            .collect()
    }

    pub(crate) fn id(&self, f: &Formula) -> Id {
        self.index[f]
    }

    pub(crate) fn kind(&self, id: Id) -> Kind {
        self.kinds[id as usize]
    }

    pub(crate) fn counts(&self, id: Id) -> &[i32] {
        &self.counts[id as usize]
    }

    pub(crate) fn formula(&self, id: Id) -> &Formula {
        &self.formulas[id as usize]
    }

    pub(crate) fn width(&self) -> usize {
        self.prims.len()
    }

    /// Whether `items` and `goal` have equal count vectors.
    pub(crate) fn balanced<'a>(&self, items: impl IntoIterator<Item = &'a Id>, goal: Id) -> bool {
        let mut acc = self.counts(goal).to_vec();
        for &id in items {
            for (slot, c) in acc.iter_mut().zip(self.counts(id).iter()) {
                *slot -= c;
            }
        }
        acc.iter().all(|&c| c == 0)
    }
}
