//! Product-free syntactic types and their concrete text syntax.
//!
//! Text grammar:
//!
//! ```text
//! formula := linimp
//! linimp  := slash ("-o" linimp)?
//! slash   := atomic (("/" atomic)* | ("\" atomic)*)
//! atomic  := IDENT | "(" formula ")"
//! ```
//!
//! `/` associates to the left, `\` and `-o` to the right, and `-o` binds
//! loosest. `/` and `\` may not be mixed at one level without parentheses.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::SyntaxError;

/// A primitive type name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: &str) -> Result<Self, SyntaxError> {
        if is_ident(name) {
            Ok(Atom(Arc::from(name)))
        } else {
            Err(SyntaxError::new(
                0,
                format!("invalid primitive type name {name:?}"),
            ))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A syntactic type. Structural equality is syntactic identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Atom),
    /// `a/b`: yields `a` when given `b` on the right.
    Over(Arc<Formula>, Arc<Formula>),
    /// `b\a`: yields `a` when given `b` on the left. Fields are `(b, a)`.
    Under(Arc<Formula>, Arc<Formula>),
    /// `b -o a`: yields `a` when `b` is supplied anywhere. Fields are `(b, a)`.
    LinImp(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    /// Builds an atom, panicking on an invalid name. Intended for literals.
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Atom::new(name).expect("invalid atom literal"))
    }

    pub fn over(result: Formula, arg: Formula) -> Formula {
        Formula::Over(Arc::new(result), Arc::new(arg))
    }

    pub fn under(arg: Formula, result: Formula) -> Formula {
        Formula::Under(Arc::new(arg), Arc::new(result))
    }

    pub fn linimp(arg: Formula, result: Formula) -> Formula {
        Formula::LinImp(Arc::new(arg), Arc::new(result))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    pub fn as_atom(&self) -> Option<&Atom> {
        match self {
            Formula::Atom(a) => Some(a),
            _ => None,
        }
    }

    /// Immediate subformulas in constructor field order.
    pub fn children(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Atom(_) => None,
            Formula::Over(l, r) | Formula::Under(l, r) | Formula::LinImp(l, r) => Some((l, r)),
        }
    }

    /// Number of connective occurrences.
    pub fn connectives(&self) -> usize {
        match self.children() {
            None => 0,
            Some((l, r)) => 1 + l.connectives() + r.connectives(),
        }
    }

    /// Number of `-o` occurrences.
    pub fn linimps(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::LinImp(l, r) => 1 + l.linimps() + r.linimps(),
            Formula::Over(l, r) | Formula::Under(l, r) => l.linimps() + r.linimps(),
        }
    }

    /// Visits every atom occurrence, left to right.
    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            Formula::Atom(a) => out.push(a),
            Formula::Over(l, r) | Formula::Under(l, r) | Formula::LinImp(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Parenthesisation contexts used by the printer.
#[derive(Clone, Copy, PartialEq)]
enum Slot {
    Top,
    OverLeft,
    UnderRight,
    Atomic,
}

fn write_in(f: &Formula, slot: Slot, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let bare = matches!(
        (f, slot),
        (Formula::Atom(_), _)
            | (_, Slot::Top)
            | (Formula::Over(..), Slot::OverLeft)
            | (Formula::Under(..), Slot::UnderRight)
    );
    if !bare {
        out.write_str("(")?;
    }
    match f {
        Formula::Atom(a) => out.write_str(a.as_str())?,
        Formula::Over(l, r) => {
            write_in(l, Slot::OverLeft, out)?;
            out.write_str("/")?;
            write_in(r, Slot::Atomic, out)?;
        }
        Formula::Under(l, r) => {
            write_in(l, Slot::Atomic, out)?;
            out.write_str("\\")?;
            write_in(r, Slot::UnderRight, out)?;
        }
        Formula::LinImp(l, r) => {
            // Nested -o chains keep their parentheses: `c -o (b -o x)`.
            let left_slot = if l.is_linimp() {
                Slot::Atomic
            } else {
                Slot::Top
            };
            write_in(l, left_slot, out)?;
            out.write_str(" -o ")?;
            let right_slot = if r.is_linimp() {
                Slot::Atomic
            } else {
                Slot::Top
            };
            write_in(r, right_slot, out)?;
        }
    }
    if !bare {
        out.write_str(")")?;
    }
    Ok(())
}

impl Formula {
    fn is_linimp(&self) -> bool {
        matches!(self, Formula::LinImp(..))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_in(self, Slot::Top, f)
    }
}

impl FromStr for Formula {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

pub fn format_formula(f: &Formula) -> String {
    f.to_string()
}

pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.expect_end()?;
    Ok(f)
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    Slash,
    Backslash,
    Lolli,
    LParen,
    RParen,
    Comma,
    Arrow,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier {s:?}"),
            Tok::Slash => f.write_str("\"/\""),
            Tok::Backslash => f.write_str("\"\\\""),
            Tok::Lolli => f.write_str("\"-o\""),
            Tok::LParen => f.write_str("\"(\""),
            Tok::RParen => f.write_str("\")\""),
            Tok::Comma => f.write_str("\",\""),
            Tok::Arrow => f.write_str("\"=>\""),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            b'\\' => {
                toks.push((i, Tok::Backslash));
                i += 1;
            }
            b'(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            b',' => {
                toks.push((i, Tok::Comma));
                i += 1;
            }
            b'-' if bytes.get(i + 1) == Some(&b'o') => {
                toks.push((i, Tok::Lolli));
                i += 2;
            }
            b'=' if bytes.get(i + 1) == Some(&b'>') => {
                toks.push((i, Tok::Arrow));
                i += 2;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(SyntaxError::new(i, format!("unexpected character {ch:?}")));
            }
        }
    }
    Ok(toks)
}

pub(crate) struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    pub(crate) fn new(text: &str) -> Result<Self, SyntaxError> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            len: text.len(),
        })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    pub(crate) fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(o, _)| *o)
    }

    pub(crate) fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn unexpected(&self, wanted: &str) -> SyntaxError {
        match self.peek() {
            Some(t) => SyntaxError::new(self.offset(), format!("expected {wanted}, found {t}")),
            None => SyntaxError::new(self.len, format!("expected {wanted}, found end of input")),
        }
    }

    pub(crate) fn expect(&mut self, tok: Tok, wanted: &str) -> Result<(), SyntaxError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    pub(crate) fn expect_end(&self) -> Result<(), SyntaxError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }

    pub(crate) fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.slash()?;
        if self.peek() == Some(&Tok::Lolli) {
            self.bump();
            let rhs = self.formula()?;
            Ok(Formula::linimp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn slash(&mut self) -> Result<Formula, SyntaxError> {
        let first = self.atomic()?;
        match self.peek() {
            Some(Tok::Slash) => {
                let mut acc = first;
                while self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let arg = self.atomic()?;
                    acc = Formula::over(acc, arg);
                }
                self.reject_mixing(Tok::Backslash)?;
                Ok(acc)
            }
            Some(Tok::Backslash) => {
                let mut operands = vec![first];
                while self.peek() == Some(&Tok::Backslash) {
                    self.bump();
                    operands.push(self.atomic()?);
                }
                self.reject_mixing(Tok::Slash)?;
                let mut acc = operands.pop().expect("nonempty");
                while let Some(arg) = operands.pop() {
                    acc = Formula::under(arg, acc);
                }
                Ok(acc)
            }
            _ => Ok(first),
        }
    }

    fn reject_mixing(&self, other: Tok) -> Result<(), SyntaxError> {
        if self.peek() == Some(&other) {
            Err(SyntaxError::new(
                self.offset(),
                "\"/\" and \"\\\" mixed without parentheses".to_string(),
            ))
        } else {
            Ok(())
        }
    }

    fn atomic(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Some(Tok::Ident(_)) => {
                let Some(Tok::Ident(name)) = self.bump() else {
                    unreachable!()
                };
                Ok(Formula::Atom(Atom(Arc::from(name.as_str()))))
            }
            Some(Tok::LParen) => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "\")\"")?;
                Ok(f)
            }
            _ => Err(self.unexpected("a primitive type or \"(\"")),
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn a(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn parses_lexicon_types() {
        assert_eq!(p("x"), a("x"));
        assert_eq!(
            p("x/(c -o (b -o x))"),
            Formula::over(
                a("x"),
                Formula::linimp(a("c"), Formula::linimp(a("b"), a("x")))
            )
        );
        assert_eq!(
            p("(y/b)/y"),
            Formula::over(Formula::over(a("y"), a("b")), a("y"))
        );
        assert_eq!(
            p("a/b/c"),
            Formula::over(Formula::over(a("a"), a("b")), a("c"))
        );
    }

    #[test]
    fn backslash_and_lolli_associate_right() {
        assert_eq!(
            p("a\\b\\c"),
            Formula::under(a("a"), Formula::under(a("b"), a("c")))
        );
        assert_eq!(p("a -o b -o c"), p("a -o (b -o c)"));
        assert_eq!(p("a/b -o c"), Formula::linimp(p("a/b"), a("c")));
    }

    #[test]
    fn rejects_mixed_slashes() {
        let err = parse_formula("a/b\\c").unwrap_err();
        assert!(err.message.contains("mixed"), "{err}");
        assert_eq!(err.offset, 3);
        assert!(parse_formula("a\\b/c").is_err());
        assert!(parse_formula("(a/b)\\c").is_ok());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_formula("a/").unwrap_err();
        assert_eq!(err.offset, 2);
        let err = parse_formula("(a/b").unwrap_err();
        assert_eq!(err.offset, 4);
        let err = parse_formula("a $ b").unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(parse_formula("").is_err());
        assert!(parse_formula("a b").is_err());
    }

    #[test]
    fn formats_with_few_parentheses() {
        assert_eq!(a("x").to_string(), "x");
        assert_eq!(p("x/(c -o (b -o x))").to_string(), "x/(c -o (b -o x))");
        assert_eq!(Formula::under(a("np"), a("s")).to_string(), "np\\s");
        assert_eq!(p("(y/b)/y").to_string(), "y/b/y");
        assert_eq!(p("(np\\np)/(s/np)").to_string(), "(np\\np)/(s/np)");
        assert_eq!(p("(a -o b) -o c").to_string(), "(a -o b) -o c");
        assert_eq!(p("a\\(b\\c)").to_string(), "a\\b\\c");
        assert_eq!(p("(a\\b)\\c").to_string(), "(a\\b)\\c");
    }

    pub(crate) fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop::sample::select(vec!["a", "b", "c", "np", "s_1"]).prop_map(Formula::atom);
        leaf.prop_recursive(6, 64, 2, |inner| {
            (inner.clone(), inner, 0..3u8).prop_map(|(l, r, k)| match k {
                0 => Formula::over(l, r),
                1 => Formula::under(l, r),
                _ => Formula::linimp(l, r),
            })
        })
    }

    proptest! {
        #[test]
        fn format_then_parse_is_identity(f in arb_formula()) {
            let text = format_formula(&f);
            prop_assert_eq!(parse_formula(&text).unwrap(), f);
        }
    }
}
