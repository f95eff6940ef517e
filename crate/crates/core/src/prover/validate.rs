use std::fmt;

use super::CalculusMode;
use crate::formula::Formula;
use crate::polarity::{polarity_report, Polarity, Position, Side};
use crate::sequent::Sequent;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputViolation {
    /// `-o` has no rules in L.
    LinImpInL { position: Position },
    /// A negative `-o` can never be decomposed, so the sequent is underivable.
    NegativeLinImp { position: Position },
}

impl InputViolation {
    /// Warnings leave the query meaningful (it will simply fail).
    pub fn is_warning(&self) -> bool {
        matches!(self, InputViolation::NegativeLinImp { .. })
    }
}

fn describe(p: &Position) -> String {
    let side = match p.side {
        Side::Antecedent(i) => format!("antecedent formula {}", i + 1),
        Side::Succedent => "succedent".to_string(),
    };
    if p.path.is_empty() {
        side
    } else {
        let path: Vec<String> = p.path.iter().map(u8::to_string).collect();
        format!("{side}, path {}", path.join("."))
    }
}

impl fmt::Display for InputViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputViolation::LinImpInL { position } => {
                write!(f, "error: -o is not part of L ({})", describe(position))
            }
            InputViolation::NegativeLinImp { position } => write!(
                f,
                "warning: -o in negative position is never derivable ({})",
                describe(position)
            ),
        }
    }
}

pub fn validate_input(s: &Sequent, mode: CalculusMode) -> Vec<InputViolation> {
    let report = polarity_report(s);
    let linimps = report
        .occurrences
        .iter()
        .filter(|o| matches!(o.formula, Formula::LinImp(..)));
    match mode {
        CalculusMode::L => linimps
            .map(|o| InputViolation::LinImpInL {
                position: o.position.clone(),
            })
            .collect(),
        CalculusMode::Sdl | CalculusMode::SdlMinus => linimps
            .filter(|o| o.polarity == Polarity::Negative)
            .map(|o| InputViolation::NegativeLinImp {
                position: o.position.clone(),
            })
            .collect(),
    }
}
