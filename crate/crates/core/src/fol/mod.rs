//! The first-order correspondence language: terms, formulas, the standard
//! translation of the expanded modal language and of every statement form,
//! evaluation over finite frames, and text / JSON / TPTP emission.
//!
//! Domain variables (`x`, `y0`, `y1`, …) and nominal names (`i0`, `i1`, …)
//! live in separate namespaces; nominals are quantifiable names rather than
//! fixed constants.

mod emit;
mod eval;
mod translate;

use std::collections::BTreeSet;
use std::fmt;

pub use emit::{emit_fo, to_json, to_text, to_tptp, FoFormat, ParseFormatError};
pub use eval::{
    eval_fo, fo_counterexample, fo_equiv_on_small_frames, fo_frame_valid, CompiledFo, FoError,
};
pub use translate::{correspondent, st_formula, st_statement, TranslationContext};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FOTerm {
    Var(String),
    Nom(String),
}

impl FOTerm {
    pub fn var(name: impl Into<String>) -> FOTerm {
        FOTerm::Var(name.into())
    }

    pub fn nom(name: impl Into<String>) -> FOTerm {
        FOTerm::Nom(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            FOTerm::Var(s) | FOTerm::Nom(s) => s,
        }
    }
}

impl fmt::Display for FOTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FOFormula {
    Eq(FOTerm, FOTerm),
    R(FOTerm, FOTerm),
    /// `P_name(t)`: the unary predicate for a propositional variable.
    P(String, FOTerm),
    Not(Box<FOFormula>),
    /// Empty conjunction is `true`.
    And(Vec<FOFormula>),
    /// Empty disjunction is `false`.
    Or(Vec<FOFormula>),
    Imp(Box<FOFormula>, Box<FOFormula>),
    Forall(FOTerm, Box<FOFormula>),
    Exists(FOTerm, Box<FOFormula>),
}

impl FOFormula {
    pub fn tt() -> FOFormula {
        FOFormula::And(Vec::new())
    }

    pub fn ff() -> FOFormula {
        FOFormula::Or(Vec::new())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: FOFormula) -> FOFormula {
        FOFormula::Not(Box::new(f))
    }

    pub fn neq(a: FOTerm, b: FOTerm) -> FOFormula {
        FOFormula::not(FOFormula::Eq(a, b))
    }

    pub fn imp(a: FOFormula, b: FOFormula) -> FOFormula {
        FOFormula::Imp(Box::new(a), Box::new(b))
    }

    pub fn forall(t: FOTerm, body: FOFormula) -> FOFormula {
        FOFormula::Forall(t, Box::new(body))
    }

    pub fn exists(t: FOTerm, body: FOFormula) -> FOFormula {
        FOFormula::Exists(t, Box::new(body))
    }

    /// Binary conjunction that flattens nested conjunctions and drops empty
    /// ones.
    pub fn and_all(parts: impl IntoIterator<Item = FOFormula>) -> FOFormula {
        let mut out = Vec::new();
        for p in parts {
            match p {
                FOFormula::And(xs) => out.extend(xs),
                other => out.push(other),
            }
        }
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            FOFormula::And(out)
        }
    }

    pub fn or_all(parts: impl IntoIterator<Item = FOFormula>) -> FOFormula {
        let mut out = Vec::new();
        for p in parts {
            match p {
                FOFormula::Or(xs) => out.extend(xs),
                other => out.push(other),
            }
        }
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            FOFormula::Or(out)
        }
    }

    /// Universal closure over the given terms, outermost first.
    pub fn forall_many(terms: impl IntoIterator<Item = FOTerm>, body: FOFormula) -> FOFormula {
        let terms: Vec<FOTerm> = terms.into_iter().collect();
        terms.into_iter().rev().fold(body, |acc, t| FOFormula::forall(t, acc))
    }

    pub fn free_terms(&self) -> BTreeSet<FOTerm> {
        fn walk(f: &FOFormula, bound: &mut Vec<FOTerm>, out: &mut BTreeSet<FOTerm>) {
            let mut see = |t: &FOTerm, bound: &Vec<FOTerm>| {
                if !bound.contains(t) {
                    out.insert(t.clone());
                }
            };
            match f {
                FOFormula::Eq(a, b) | FOFormula::R(a, b) => {
                    see(a, bound);
                    see(b, bound);
                }
                FOFormula::P(_, t) => see(t, bound),
                FOFormula::Not(a) => walk(a, bound, out),
                FOFormula::And(xs) | FOFormula::Or(xs) => xs.iter().for_each(|x| walk(x, bound, out)),
                FOFormula::Imp(a, b) => {
                    walk(a, bound, out);
                    walk(b, bound, out);
                }
                FOFormula::Forall(t, body) | FOFormula::Exists(t, body) => {
                    bound.push(t.clone());
                    walk(body, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn predicates(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let FOFormula::P(name, _) = f {
                out.insert(name.clone());
            }
        });
        out
    }

    /// `true` if some quantifier rebinds a term already bound above it.
    pub fn has_shadowing(&self) -> bool {
        fn walk(f: &FOFormula, bound: &mut Vec<FOTerm>) -> bool {
            match f {
                FOFormula::Eq(..) | FOFormula::R(..) | FOFormula::P(..) => false,
                FOFormula::Not(a) => walk(a, bound),
                FOFormula::And(xs) | FOFormula::Or(xs) => xs.iter().any(|x| walk(x, bound)),
                FOFormula::Imp(a, b) => walk(a, bound) || walk(b, bound),
                FOFormula::Forall(t, body) | FOFormula::Exists(t, body) => {
                    if bound.contains(t) {
                        return true;
                    }
                    bound.push(t.clone());
                    let r = walk(body, bound);
                    bound.pop();
                    r
                }
            }
        }
        walk(self, &mut Vec::new())
    }

    pub fn visit(&self, k: &mut impl FnMut(&FOFormula)) {
        k(self);
        match self {
            FOFormula::Not(a) => a.visit(k),
            FOFormula::And(xs) | FOFormula::Or(xs) => xs.iter().for_each(|x| x.visit(k)),
            FOFormula::Imp(a, b) => {
                a.visit(k);
                b.visit(k);
            }
            FOFormula::Forall(_, b) | FOFormula::Exists(_, b) => b.visit(k),
            _ => {}
        }
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }
}

impl fmt::Display for FOFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_text(self))
    }
}
