//! Truth sets as world bitmasks.
//!
//! `cur` is always the current relation as an edge bitmask; the sabotage
//! modalities shrink it, the labelled modalities ignore it and read `r0`
//! minus the edges named by their label.

use crate::syntax::{EdgeLabelSet, Formula};

use super::frame::{DeletionContext, KripkeFrame, Valuation, WorldSet};
use super::SemanticsError;

pub(crate) struct Evaluator<'a> {
    frame: &'a KripkeFrame,
    val: &'a Valuation,
    n: usize,
    all: WorldSet,
}

type Env<'f> = Vec<(&'f str, usize)>;

impl<'a> Evaluator<'a> {
    pub(crate) fn new(frame: &'a KripkeFrame, val: &'a Valuation) -> Self {
        Evaluator { frame, val, n: frame.size(), all: frame.all_worlds() }
    }

    fn nominal(&self, env: &Env<'_>, name: &str) -> Result<usize, SemanticsError> {
        if let Some(&(_, w)) = env.iter().rev().find(|(k, _)| *k == name) {
            return Ok(w);
        }
        match self.val.noms.get(name) {
            Some(&w) if w < self.n => Ok(w),
            Some(&w) => Err(SemanticsError::WorldOutOfRange { world: w, worlds: self.n }),
            None => Err(SemanticsError::UninterpretedNominal(name.to_string())),
        }
    }

    /// `r0` minus the concrete edges denoted by `s`.
    pub(crate) fn labelled_relation(&self, s: &EdgeLabelSet, env: &Env<'_>) -> Result<u64, SemanticsError> {
        let mut rel = self.frame.r0();
        for (a, b) in s.iter() {
            let u = self.nominal(env, a)?;
            let v = self.nominal(env, b)?;
            rel &= !self.frame.edge_bit(u, v);
        }
        Ok(rel)
    }

    #[inline]
    fn row(&self, rel: u64, w: usize) -> WorldSet {
        (rel >> (w * self.n)) & self.all
    }

    fn pre_dia(&self, rel: u64, a: WorldSet) -> WorldSet {
        (0..self.n).filter(|&w| self.row(rel, w) & a != 0).fold(0, |acc, w| acc | 1 << w)
    }

    fn pre_box(&self, rel: u64, a: WorldSet) -> WorldSet {
        (0..self.n).filter(|&w| self.row(rel, w) & !a == 0).fold(0, |acc, w| acc | 1 << w)
    }

    fn post_dia(&self, rel: u64, a: WorldSet) -> WorldSet {
        (0..self.n).filter(|&v| a >> v & 1 == 1).fold(0, |acc, v| acc | self.row(rel, v))
    }

    fn post_box(&self, rel: u64, a: WorldSet) -> WorldSet {
        self.all & !self.post_dia(rel, self.all & !a)
    }

    pub(crate) fn ext<'f>(&self, f: &'f Formula, cur: u64, env: &mut Env<'f>) -> Result<WorldSet, SemanticsError> {
        use Formula::*;
        Ok(match f {
            Bot => 0,
            Top => self.all,
            Prop(p) => *self
                .val
                .props
                .get(p)
                .ok_or_else(|| SemanticsError::UninterpretedVariable(p.clone()))?
                & self.all,
            Nom(i) => 1 << self.nominal(env, i)?,
            Not(a) => self.all & !self.ext(a, cur, env)?,
            And(a, b) => self.ext(a, cur, env)? & self.ext(b, cur, env)?,
            Or(a, b) => self.ext(a, cur, env)? | self.ext(b, cur, env)?,
            Imp(a, b) => (self.all & !self.ext(a, cur, env)?) | self.ext(b, cur, env)?,
            Iff(a, b) => self.all & !(self.ext(a, cur, env)? ^ self.ext(b, cur, env)?),
            Dia(a) => self.pre_dia(cur, self.ext(a, cur, env)?),
            Box(a) => self.pre_box(cur, self.ext(a, cur, env)?),
            SDia(a) => {
                let mut acc = 0;
                let mut edges = cur;
                while edges != 0 {
                    let e = edges & edges.wrapping_neg();
                    acc |= self.ext(a, cur & !e, env)?;
                    edges &= edges - 1;
                }
                acc
            }
            SBox(a) => {
                let mut acc = self.all;
                let mut edges = cur;
                while edges != 0 {
                    let e = edges & edges.wrapping_neg();
                    acc &= self.ext(a, cur & !e, env)?;
                    edges &= edges - 1;
                }
                acc
            }
            LDia(s, a) => {
                let rel = self.labelled_relation(s, env)?;
                self.pre_dia(rel, self.ext(a, cur, env)?)
            }
            LBox(s, a) => {
                let rel = self.labelled_relation(s, env)?;
                self.pre_box(rel, self.ext(a, cur, env)?)
            }
            InvLDia(s, a) => {
                let rel = self.labelled_relation(s, env)?;
                self.post_dia(rel, self.ext(a, cur, env)?)
            }
            InvLBox(s, a) => {
                let rel = self.labelled_relation(s, env)?;
                self.post_box(rel, self.ext(a, cur, env)?)
            }
            GBox(a) => {
                if self.ext(a, cur, env)? == self.all {
                    self.all
                } else {
                    0
                }
            }
            GDia(a) => {
                if self.ext(a, cur, env)? != 0 {
                    self.all
                } else {
                    0
                }
            }
            ForallNom(i, a) => {
                let mut acc = self.all;
                for w in 0..self.n {
                    env.push((i, w));
                    let r = self.ext(a, cur, env);
                    env.pop();
                    acc &= r?;
                }
                acc
            }
            ExistsNom(i, a) => {
                let mut acc = 0;
                for w in 0..self.n {
                    env.push((i, w));
                    let r = self.ext(a, cur, env);
                    env.pop();
                    acc |= r?;
                }
                acc
            }
        })
    }
}

/// The set of worlds where `f` holds, with `deleted` removed from `r0`.
pub fn extension(
    frame: &KripkeFrame,
    val: &Valuation,
    deleted: DeletionContext,
    f: &Formula,
) -> Result<WorldSet, SemanticsError> {
    Evaluator::new(frame, val).ext(f, deleted.current_relation(frame), &mut Vec::new())
}

pub fn satisfies(
    frame: &KripkeFrame,
    val: &Valuation,
    deleted: DeletionContext,
    w: usize,
    f: &Formula,
) -> Result<bool, SemanticsError> {
    if w >= frame.size() {
        return Err(SemanticsError::WorldOutOfRange { world: w, worlds: frame.size() });
    }
    Ok(extension(frame, val, deleted, f)? >> w & 1 == 1)
}
