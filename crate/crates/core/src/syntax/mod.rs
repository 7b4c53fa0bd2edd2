//! Abstract syntax, parsing and printing for the base sabotage language and
//! the expanded language used during rewriting.

mod formula;
mod fresh;
mod parser;
mod printer;

pub use formula::{nom, prop, EdgeLabelSet, Formula, Polarity};
pub use fresh::FreshNominals;
pub use parser::{parse_formula, parse_inequality, ParseError};
pub use printer::print_formula;

/// Nominal names are `i` followed by one or more digits, and no user
/// variable may start that way.
pub fn is_reserved_nominal(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next() == Some('i') && chars.next().is_some_and(|c| c.is_ascii_digit())
}

pub fn polarity(f: &Formula, p: &str) -> Polarity {
    f.polarity(p)
}
