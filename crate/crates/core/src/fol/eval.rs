use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::semantics::{enumerate_frames_capped, KripkeFrame, SemanticsError, Valuation, WorldSet, HARD_FRAME_CAP};

use super::{FOFormula, FOTerm};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FoError {
    #[error("unbound name `{0}`")]
    UnboundName(String),
    #[error("no interpretation for predicate `P_{0}`")]
    UninterpretedPredicate(String),
    #[error("world {world} out of range for a frame with {worlds} worlds")]
    WorldOutOfRange { world: usize, worlds: usize },
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

#[derive(Clone, Debug)]
enum Node {
    Eq(usize, usize),
    R(usize, usize),
    P(usize, usize),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Imp(Box<Node>, Box<Node>),
    Forall(usize, Box<Node>),
    Exists(usize, Box<Node>),
}

/// A formula with every name resolved to a slot and every predicate to an
/// index, ready for repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledFo {
    root: Node,
    free: Vec<FOTerm>,
    preds: Vec<String>,
    slots: usize,
}

struct Compiler<'a> {
    scope: Vec<(&'a FOTerm, usize)>,
    preds: &'a [String],
    max_slot: usize,
}

impl<'a> Compiler<'a> {
    fn slot(&self, t: &FOTerm) -> usize {
        self.scope.iter().rev().find(|(s, _)| *s == t).map(|(_, k)| *k).expect("free terms are pre-bound")
    }

    fn node(&mut self, f: &'a FOFormula) -> Node {
        match f {
            FOFormula::Eq(a, b) => Node::Eq(self.slot(a), self.slot(b)),
            FOFormula::R(a, b) => Node::R(self.slot(a), self.slot(b)),
            FOFormula::P(name, t) => {
                let k = self.preds.iter().position(|p| p == name).expect("predicates are pre-indexed");
                Node::P(k, self.slot(t))
            }
            FOFormula::Not(a) => Node::Not(Box::new(self.node(a))),
            FOFormula::And(xs) => Node::And(xs.iter().map(|x| self.node(x)).collect()),
            FOFormula::Or(xs) => Node::Or(xs.iter().map(|x| self.node(x)).collect()),
            FOFormula::Imp(a, b) => Node::Imp(Box::new(self.node(a)), Box::new(self.node(b))),
            FOFormula::Forall(t, body) | FOFormula::Exists(t, body) => {
                let slot = self.scope.len();
                self.max_slot = self.max_slot.max(slot + 1);
                self.scope.push((t, slot));
                let b = Box::new(self.node(body));
                self.scope.pop();
                if matches!(f, FOFormula::Forall(..)) {
                    Node::Forall(slot, b)
                } else {
                    Node::Exists(slot, b)
                }
            }
        }
    }
}

struct Structure<'a> {
    n: usize,
    r0: u64,
    props: &'a [WorldSet],
}

impl Structure<'_> {
    fn eval(&self, node: &Node, env: &mut [usize]) -> bool {
        match node {
            Node::Eq(a, b) => env[*a] == env[*b],
            Node::R(a, b) => self.r0 >> (env[*a] * self.n + env[*b]) & 1 == 1,
            Node::P(k, a) => self.props[*k] >> env[*a] & 1 == 1,
            Node::Not(a) => !self.eval(a, env),
            Node::And(xs) => xs.iter().all(|x| self.eval(x, env)),
            Node::Or(xs) => xs.iter().any(|x| self.eval(x, env)),
            Node::Imp(a, b) => !self.eval(a, env) || self.eval(b, env),
            Node::Forall(s, body) => (0..self.n).all(|w| {
                env[*s] = w;
                self.eval(body, env)
            }),
            Node::Exists(s, body) => (0..self.n).any(|w| {
                env[*s] = w;
                self.eval(body, env)
            }),
        }
    }
}

impl CompiledFo {
    /// Compile with the free terms in the given order; every predicate of
    /// `f` must appear in `preds`.
    fn with_layout(f: &FOFormula, free: Vec<FOTerm>, preds: Vec<String>) -> CompiledFo {
        let (root, slots) = {
            let mut c = Compiler { scope: free.iter().enumerate().map(|(k, t)| (t, k)).collect(), preds: &preds, max_slot: free.len() };
            let root = c.node(f);
            (root, c.max_slot)
        };
        CompiledFo { root, free, preds, slots }
    }

    pub fn new(f: &FOFormula) -> CompiledFo {
        CompiledFo::with_layout(f, f.free_terms().into_iter().collect(), f.predicates().into_iter().collect())
    }

    pub fn free_terms(&self) -> &[FOTerm] {
        &self.free
    }

    pub fn predicates(&self) -> &[String] {
        &self.preds
    }

    /// Evaluate with `props[k]` interpreting `predicates()[k]` and
    /// `assignment[k]` the world of `free_terms()[k]`.
    pub fn eval(&self, frame: &KripkeFrame, props: &[WorldSet], assignment: &[usize]) -> bool {
        let mut env = vec![0usize; self.slots.max(1)];
        env[..assignment.len()].copy_from_slice(assignment);
        Structure { n: frame.size(), r0: frame.r0(), props }.eval(&self.root, &mut env)
    }

    /// True under every valuation of its predicates and every assignment
    /// of its free terms.
    pub fn valid_on(&self, frame: &KripkeFrame) -> bool {
        let n = frame.size();
        let all = frame.all_worlds();
        let k = self.preds.len();
        let combos: u64 = 1u64 << (n * k);
        let mut props = vec![0; k];
        for c in 0..combos {
            for (t, p) in props.iter_mut().enumerate() {
                *p = (c >> (t * n)) & all;
            }
            if !for_all_assignments(n, self.free.len(), &mut |a| self.eval(frame, &props, a)) {
                return false;
            }
        }
        true
    }
}

fn for_all_assignments(n: usize, k: usize, body: &mut impl FnMut(&[usize]) -> bool) -> bool {
    let mut a = vec![0usize; k];
    loop {
        if !body(&a) {
            return false;
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return true;
            }
            a[pos] += 1;
            if a[pos] < n {
                break;
            }
            a[pos] = 0;
            pos += 1;
        }
    }
}

/// Tarskian truth of `f` in the frame under `val`, with `assignment`
/// giving a world for every free variable and nominal.
pub fn eval_fo(
    frame: &KripkeFrame,
    val: &Valuation,
    assignment: &BTreeMap<String, usize>,
    f: &FOFormula,
) -> Result<bool, FoError> {
    let c = CompiledFo::new(f);
    let n = frame.size();
    let mut worlds = Vec::with_capacity(c.free.len());
    for t in &c.free {
        let w = match assignment.get(t.name()) {
            Some(&w) => w,
            None => match (t, val.noms.get(t.name())) {
                (FOTerm::Nom(_), Some(&w)) => w,
                _ => return Err(FoError::UnboundName(t.name().to_string())),
            },
        };
        if w >= n {
            return Err(FoError::WorldOutOfRange { world: w, worlds: n });
        }
        worlds.push(w);
    }
    let mut props = Vec::with_capacity(c.preds.len());
    for p in &c.preds {
        props.push(*val.props.get(p).ok_or_else(|| FoError::UninterpretedPredicate(p.clone()))? & frame.all_worlds());
    }
    Ok(c.eval(frame, &props, &worlds))
}

/// Frame validity: truth under every valuation of `vars` (and of any other
/// predicate of `f`) and every assignment of the free names.
pub fn fo_frame_valid(frame: &KripkeFrame, f: &FOFormula, vars: &[String]) -> bool {
    let mut preds: BTreeSet<String> = f.predicates();
    preds.extend(vars.iter().cloned());
    let c = CompiledFo::with_layout(f, f.free_terms().into_iter().collect(), preds.into_iter().collect());
    c.valid_on(frame)
}

/// The first frame (by size, then enumeration order) on which the two
/// formulas disagree under some valuation and assignment.
pub fn fo_counterexample(
    f1: &FOFormula,
    f2: &FOFormula,
    max_n: usize,
    vars: &[String],
) -> Result<Option<KripkeFrame>, FoError> {
    if max_n > HARD_FRAME_CAP {
        return Err(SemanticsError::CapExceeded { requested: max_n, cap: HARD_FRAME_CAP }.into());
    }
    let mut free: BTreeSet<FOTerm> = f1.free_terms();
    free.extend(f2.free_terms());
    let free: Vec<FOTerm> = free.into_iter().collect();
    let mut preds: BTreeSet<String> = f1.predicates();
    preds.extend(f2.predicates());
    preds.extend(vars.iter().cloned());
    let preds: Vec<String> = preds.into_iter().collect();
    let c1 = CompiledFo::with_layout(f1, free.clone(), preds.clone());
    let c2 = CompiledFo::with_layout(f2, free.clone(), preds.clone());
    for n in 1..=max_n {
        let frames: Vec<KripkeFrame> = enumerate_frames_capped(n, HARD_FRAME_CAP)?.collect();
        let hit = frames.into_par_iter().find_first(|frame| {
            let all = frame.all_worlds();
            let combos: u64 = 1u64 << (n * preds.len());
            let mut props = vec![0; preds.len()];
            (0..combos).any(|c| {
                for (t, p) in props.iter_mut().enumerate() {
                    *p = (c >> (t * n)) & all;
                }
                !for_all_assignments(n, free.len(), &mut |a| c1.eval(frame, &props, a) == c2.eval(frame, &props, a))
            })
        });
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

/// Agreement on every frame with at most `max_n` worlds, every valuation
/// and every assignment of the free names.
pub fn fo_equiv_on_small_frames(f1: &FOFormula, f2: &FOFormula, max_n: usize, vars: &[String]) -> Result<bool, FoError> {
    Ok(fo_counterexample(f1, f2, max_n, vars)?.is_none())
}
