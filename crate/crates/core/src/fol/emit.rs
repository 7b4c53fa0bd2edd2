use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};

use super::{FOFormula, FOTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FoFormat {
    #[default]
    Text,
    Json,
    Tptp,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown format `{0}` (expected text, json or tptp)")]
pub struct ParseFormatError(pub String);

impl FromStr for FoFormat {
    type Err = ParseFormatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(FoFormat::Text),
            "json" => Ok(FoFormat::Json),
            "tptp" => Ok(FoFormat::Tptp),
            other => Err(ParseFormatError(other.to_string())),
        }
    }
}

pub fn emit_fo(f: &FOFormula, format: FoFormat) -> String {
    match format {
        FoFormat::Text => to_text(f),
        FoFormat::Json => to_json(f).to_string(),
        FoFormat::Tptp => to_tptp(f, "corr"),
    }
}

const QUANT: u8 = 0;
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const NOT: u8 = 4;
const ATOM: u8 = 5;

fn text_prec(f: &FOFormula) -> u8 {
    match f {
        FOFormula::Forall(..) | FOFormula::Exists(..) => QUANT,
        FOFormula::Imp(..) => IMP,
        FOFormula::Or(xs) if xs.len() > 1 => OR,
        FOFormula::And(xs) if xs.len() > 1 => AND,
        FOFormula::Or(xs) | FOFormula::And(xs) if xs.len() == 1 => text_prec(&xs[0]),
        FOFormula::Not(a) if !matches!(**a, FOFormula::Eq(..)) => NOT,
        _ => ATOM,
    }
}

/// ASCII rendering: `forall`, `exists`, `&`, `|`, `~`, `->`, `=`, `!=`.
pub fn to_text(f: &FOFormula) -> String {
    let mut out = String::new();
    text(f, QUANT, &mut out);
    out
}

fn text(f: &FOFormula, ctx: u8, out: &mut String) {
    let p = text_prec(f);
    if p < ctx {
        out.push('(');
        text(f, QUANT, out);
        out.push(')');
        return;
    }
    match f {
        FOFormula::Eq(a, b) => {
            let _ = write!(out, "{a} = {b}");
        }
        FOFormula::R(a, b) => {
            let _ = write!(out, "R({a},{b})");
        }
        FOFormula::P(name, t) => {
            let _ = write!(out, "P_{name}({t})");
        }
        FOFormula::Not(a) => match &**a {
            FOFormula::Eq(x, y) => {
                let _ = write!(out, "{x} != {y}");
            }
            inner => {
                out.push('~');
                text(inner, NOT, out);
            }
        },
        FOFormula::And(xs) | FOFormula::Or(xs) => {
            let (empty, sep, prec) = match f {
                FOFormula::And(_) => ("true", " & ", AND),
                _ => ("false", " | ", OR),
            };
            match xs.len() {
                0 => out.push_str(empty),
                1 => text(&xs[0], ctx, out),
                _ => {
                    for (k, x) in xs.iter().enumerate() {
                        if k > 0 {
                            out.push_str(sep);
                        }
                        text(x, prec + 1, out);
                    }
                }
            }
        }
        FOFormula::Imp(a, b) => {
            text(a, OR, out);
            out.push_str(" -> ");
            text(b, IMP, out);
        }
        FOFormula::Forall(t, body) | FOFormula::Exists(t, body) => {
            let q = if matches!(f, FOFormula::Forall(..)) { "forall" } else { "exists" };
            let _ = write!(out, "{q} {t}. ");
            text(body, QUANT, out);
        }
    }
}

fn term_json(t: &FOTerm) -> Value {
    Value::String(t.name().to_string())
}

/// JSON mirroring the variant tree; terms are plain strings.
pub fn to_json(f: &FOFormula) -> Value {
    match f {
        FOFormula::Eq(a, b) => json!({ "eq": [term_json(a), term_json(b)] }),
        FOFormula::R(a, b) => json!({ "r": [term_json(a), term_json(b)] }),
        FOFormula::P(name, t) => json!({ "pred": [name, term_json(t)] }),
        FOFormula::Not(a) => json!({ "not": to_json(a) }),
        FOFormula::And(xs) => json!({ "and": xs.iter().map(to_json).collect::<Vec<_>>() }),
        FOFormula::Or(xs) => json!({ "or": xs.iter().map(to_json).collect::<Vec<_>>() }),
        FOFormula::Imp(a, b) => json!({ "imp": [to_json(a), to_json(b)] }),
        FOFormula::Forall(t, b) => json!({ "forall": [term_json(t), to_json(b)] }),
        FOFormula::Exists(t, b) => json!({ "exists": [term_json(t), to_json(b)] }),
    }
}

fn tptp_var(t: &FOTerm) -> String {
    let name = t.name();
    let mut chars = name.chars();
    match chars.next() {
        Some(c) => c.to_ascii_uppercase().to_string() + chars.as_str(),
        None => String::from("V"),
    }
}

fn tptp_is_atomic(f: &FOFormula) -> bool {
    match f {
        FOFormula::Eq(..) | FOFormula::R(..) | FOFormula::P(..) => true,
        FOFormula::Not(a) => matches!(**a, FOFormula::Eq(..)),
        FOFormula::And(xs) | FOFormula::Or(xs) => xs.is_empty() || (xs.len() == 1 && tptp_is_atomic(&xs[0])),
        _ => false,
    }
}

fn tptp(f: &FOFormula, out: &mut String) {
    match f {
        FOFormula::Eq(a, b) => {
            let _ = write!(out, "{} = {}", tptp_var(a), tptp_var(b));
        }
        FOFormula::R(a, b) => {
            let _ = write!(out, "r({},{})", tptp_var(a), tptp_var(b));
        }
        FOFormula::P(name, t) => {
            let _ = write!(out, "p_{}({})", name, tptp_var(t));
        }
        FOFormula::Not(a) => match &**a {
            FOFormula::Eq(x, y) => {
                let _ = write!(out, "{} != {}", tptp_var(x), tptp_var(y));
            }
            inner => {
                out.push_str("~ ");
                tptp_unit(inner, out);
            }
        },
        FOFormula::And(xs) | FOFormula::Or(xs) => {
            let (empty, sep) = match f {
                FOFormula::And(_) => ("$true", " & "),
                _ => ("$false", " | "),
            };
            match xs.len() {
                0 => out.push_str(empty),
                1 => tptp(&xs[0], out),
                _ => {
                    for (k, x) in xs.iter().enumerate() {
                        if k > 0 {
                            out.push_str(sep);
                        }
                        tptp_unit(x, out);
                    }
                }
            }
        }
        FOFormula::Imp(a, b) => {
            tptp_unit(a, out);
            out.push_str(" => ");
            tptp_unit(b, out);
        }
        FOFormula::Forall(t, body) | FOFormula::Exists(t, body) => {
            let q = if matches!(f, FOFormula::Forall(..)) { '!' } else { '?' };
            let _ = write!(out, "{q}[{}]: ", tptp_var(t));
            tptp_unit(body, out);
        }
    }
}

fn tptp_unit(f: &FOFormula, out: &mut String) {
    if tptp_is_atomic(f) {
        tptp(f, out);
    } else {
        out.push('(');
        tptp(f, out);
        out.push(')');
    }
}

/// A single `fof` axiom; free terms are universally closed.
pub fn to_tptp(f: &FOFormula, name: &str) -> String {
    let free = f.free_terms();
    let closed = FOFormula::forall_many(free, f.clone());
    let mut body = String::new();
    tptp(&closed, &mut body);
    format!("fof({name}, axiom, {body}).")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn refl() -> FOFormula {
        let x = FOTerm::var("x");
        FOFormula::forall(x.clone(), FOFormula::R(x.clone(), x))
    }

    #[test]
    fn three_formats() {
        assert_eq!(emit_fo(&refl(), FoFormat::Text), "forall x. R(x,x)");
        assert_eq!(emit_fo(&refl(), FoFormat::Tptp), "fof(corr, axiom, ![X]: r(X,X)).");
        let e = FOFormula::Eq(FOTerm::nom("i0"), FOTerm::nom("i0"));
        assert_eq!(emit_fo(&e, FoFormat::Json), r#"{"eq":["i0","i0"]}"#);
    }

    #[test]
    fn text_parenthesizes_quantifiers_under_connectives() {
        let x = FOTerm::var("x");
        let f = FOFormula::imp(refl(), FOFormula::Eq(x.clone(), x));
        assert_eq!(to_text(&f), "(forall x. R(x,x)) -> x = x");
        assert_eq!(to_text(&FOFormula::tt()), "true");
        assert_eq!(to_tptp(&FOFormula::ff(), "c"), "fof(c, axiom, $false).");
    }

    #[test]
    fn tptp_closes_free_names() {
        let f = FOFormula::R(FOTerm::nom("i0"), FOTerm::var("x"));
        assert_eq!(to_tptp(&f, "c"), "fof(c, axiom, ![X]: (![I0]: r(I0,X))).");
    }
}
