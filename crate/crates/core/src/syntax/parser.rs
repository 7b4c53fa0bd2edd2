//! Recursive-descent parser for the ASCII surface syntax.
//!
//! ```text
//! phi := "bot" | "top" | ident | "~" phi | phi "&" phi | phi "|" phi
//!      | phi "->" phi | phi "<->" phi | "<>" phi | "[]" phi
//!      | "<!>" phi | "[!]" phi | "(" phi ")"
//! ```
//!
//! Prefix operators bind tightest, then `&`, `|`, `->` (right-assoc) and
//! finally `<->` (right-assoc). `&` and `|` associate to the left.

use std::fmt;

use thiserror::Error;

use super::formula::Formula;
use super::is_reserved_nominal;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Bot,
    Top,
    Ident(String),
    Not,
    And,
    Or,
    Imp,
    Iff,
    Dia,
    Box,
    SDia,
    SBox,
    LParen,
    RParen,
    Leq,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Bot => "`bot`",
            Tok::Top => "`top`",
            Tok::Ident(name) => return write!(f, "identifier `{name}`"),
            Tok::Not => "`~`",
            Tok::And => "`&`",
            Tok::Or => "`|`",
            Tok::Imp => "`->`",
            Tok::Iff => "`<->`",
            Tok::Dia => "`<>`",
            Tok::Box => "`[]`",
            Tok::SDia => "`<!>`",
            Tok::SBox => "`[!]`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Leq => "`<=`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

/// Malformed input, with the byte offset of the offending token.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("parse error at {position}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let rest = &text[i..];
        let fixed: &[(&str, Tok)] = &[
            ("<->", Tok::Iff),
            ("<!>", Tok::SDia),
            ("[!]", Tok::SBox),
            ("<>", Tok::Dia),
            ("<=", Tok::Leq),
            ("[]", Tok::Box),
            ("->", Tok::Imp),
            ("~", Tok::Not),
            ("&", Tok::And),
            ("|", Tok::Or),
            ("(", Tok::LParen),
            (")", Tok::RParen),
        ];
        if let Some((s, t)) = fixed.iter().find(|(s, _)| rest.starts_with(s)) {
            out.push((i, t.clone()));
            i += s.len();
            continue;
        }
        if c.is_ascii_lowercase() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word = &text[start..i];
            let tok = match word {
                "bot" => Tok::Bot,
                "top" => Tok::Top,
                w if is_reserved_nominal(w) => {
                    return Err(ParseError {
                        position: start,
                        expected: vec!["a propositional variable not of the form `i<digit>...`".into()],
                        found: format!("reserved nominal name `{w}`"),
                    })
                }
                w => Tok::Ident(w.to_string()),
            };
            out.push((start, tok));
            continue;
        }
        let ch = rest.chars().next().unwrap_or('?');
        return Err(ParseError {
            position: i,
            expected: vec!["a formula token".into()],
            found: format!("character `{ch}`"),
        });
    }
    out.push((text.len(), Tok::Eof));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

const ATOM_START: &[&str] = &["`bot`", "`top`", "identifier", "`~`", "`<>`", "`[]`", "`<!>`", "`[!]`", "`(`"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            position: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        self.iff()
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = Formula::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let wrap: fn(Formula) -> Formula = match self.peek() {
            Tok::Not => Formula::not,
            Tok::Dia => Formula::dia,
            Tok::Box => Formula::boxed,
            Tok::SDia => Formula::sdia,
            Tok::SBox => Formula::sbox,
            _ => return self.atom(),
        };
        self.bump();
        Ok(wrap(self.unary()?))
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Bot => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::Top => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Prop(name))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["`)`", "`&`", "`|`", "`->`", "`<->`"]));
                }
                self.bump();
                Ok(f)
            }
            _ => Err(self.error(ATOM_START)),
        }
    }

    fn expect_eof(&self, also: &[&str]) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            let mut exp = vec!["end of input", "`&`", "`|`", "`->`", "`<->`"];
            exp.extend_from_slice(also);
            Err(self.error(&exp))
        }
    }
}

/// Parse a single base-language formula.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let f = p.formula()?;
    p.expect_eof(&[])?;
    Ok(f)
}

/// Parse `phi <= psi`, or a bare formula. A bare formula whose main
/// connective is `->` is read as the inequality between its antecedent and
/// consequent; any other bare formula `phi` is read as `top <= phi`.
pub fn parse_inequality(text: &str) -> Result<(Formula, Formula), ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let lhs = p.formula()?;
    if *p.peek() == Tok::Leq {
        p.bump();
        let rhs = p.formula()?;
        p.expect_eof(&[])?;
        return Ok((lhs, rhs));
    }
    p.expect_eof(&["`<=`"])?;
    Ok(match lhs {
        Formula::Imp(a, b) => (*a, *b),
        other => (Formula::Top, other),
    })
}
