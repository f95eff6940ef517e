use std::fmt;
use std::str::FromStr;

use crate::error::{EmptyAntecedent, SyntaxError};
use crate::formula::{Formula, Parser, Tok};

/// `U => A` with a nonempty ordered antecedent `U`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    antecedent: Vec<Formula>,
    succedent: Formula,
}

impl Sequent {
    pub fn new(antecedent: Vec<Formula>, succedent: Formula) -> Result<Self, EmptyAntecedent> {
        if antecedent.is_empty() {
            return Err(EmptyAntecedent);
        }
        Ok(Sequent {
            antecedent,
            succedent,
        })
    }

    pub fn antecedent(&self) -> &[Formula] {
        &self.antecedent
    }

    pub fn succedent(&self) -> &Formula {
        &self.succedent
    }

    pub fn into_parts(self) -> (Vec<Formula>, Formula) {
        (self.antecedent, self.succedent)
    }

    /// Every formula of the sequent, antecedent first.
    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.antecedent
            .iter()
            .chain(std::iter::once(&self.succedent))
    }

    pub fn connectives(&self) -> usize {
        self.formulas().map(Formula::connectives).sum()
    }

    pub fn linimps(&self) -> usize {
        self.formulas().map(Formula::linimps).sum()
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.antecedent.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, " => {}", self.succedent)
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Sequent {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sequent(s)
    }
}

/// Parses `A1, ..., An => B`.
pub fn parse_sequent(text: &str) -> Result<Sequent, SyntaxError> {
    let mut p = Parser::new(text)?;
    let mut antecedent = vec![p.formula()?];
    while p.peek() == Some(&Tok::Comma) {
        p.bump();
        antecedent.push(p.formula()?);
    }
    p.expect(Tok::Arrow, "\",\" or \"=>\"")?;
    let succedent = p.formula()?;
    p.expect_end()?;
    Ok(Sequent {
        antecedent,
        succedent,
    })
}
