use crate::syntax::Formula;

use super::eval::Evaluator;
use super::frame::{KripkeFrame, Valuation};
use super::statement::{Ineq, Mega, Statement, UqIneq};
use super::SemanticsError;

pub const DEFAULT_FRAME_CAP: usize = 3;
/// Beyond four worlds the sweep (2^25 frames at n = 5) is impractical.
pub const HARD_FRAME_CAP: usize = 4;

type Env<'f> = Vec<(&'f str, usize)>;

struct StatementEval<'a> {
    ev: Evaluator<'a>,
    frame: &'a KripkeFrame,
}

impl<'a> StatementEval<'a> {
    fn ineq<'f>(&self, i: &'f Ineq, env: &mut Env<'f>) -> Result<bool, SemanticsError> {
        let left_rel = self.ev.labelled_relation(&i.sup, env)?;
        let right_rel = self.ev.labelled_relation(&i.sub, env)?;
        let l = self.ev.ext(&i.lhs, left_rel, env)?;
        if l == 0 {
            return Ok(true);
        }
        let r = self.ev.ext(&i.rhs, right_rel, env)?;
        Ok(l & !r == 0)
    }

    fn mega<'f>(&self, m: &'f Mega, env: &mut Env<'f>) -> Result<bool, SemanticsError> {
        match m {
            Mega::Leaf(i) => self.ineq(i, env),
            Mega::Conj(a, b) => Ok(self.mega(a, env)? && self.mega(b, env)?),
            Mega::Guarded { from, to, label, body } => {
                let rel = self.ev.labelled_relation(label, env)?;
                for (w, v) in super::frame::edges_of(self.frame.size(), rel) {
                    env.push((from, w));
                    env.push((to, v));
                    let r = self.mega(body, env);
                    env.truncate(env.len() - 2);
                    if !r? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    fn uq<'f>(&self, u: &'f UqIneq, env: &mut Env<'f>) -> Result<bool, SemanticsError> {
        self.for_all_tuples(&u.binders, env, &mut |this, env| this.ineq(&u.body, env))
    }

    fn for_all_tuples<'f>(
        &self,
        binders: &'f [String],
        env: &mut Env<'f>,
        body: &mut impl FnMut(&Self, &mut Env<'f>) -> Result<bool, SemanticsError>,
    ) -> Result<bool, SemanticsError> {
        let Some((first, rest)) = binders.split_first() else {
            return body(self, env);
        };
        for w in 0..self.frame.size() {
            env.push((first, w));
            let r = self.for_all_tuples(rest, env, body);
            env.pop();
            if !r? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn statement<'f>(&self, s: &'f Statement, env: &mut Env<'f>) -> Result<bool, SemanticsError> {
        match s {
            Statement::Ineq(i) => self.ineq(i, env),
            Statement::Mega(m) => self.mega(m, env),
            Statement::UqIneq(u) => self.uq(u, env),
            Statement::QuasiUq(q) => {
                for p in &q.premises {
                    if !self.uq(p, env)? {
                        return Ok(true);
                    }
                }
                self.uq(&q.conclusion, env)
            }
        }
    }
}

/// Truth of a statement in the model `(frame, val)`.
pub fn eval_statement(frame: &KripkeFrame, val: &Valuation, s: &Statement) -> Result<bool, SemanticsError> {
    let se = StatementEval { ev: Evaluator::new(frame, val), frame };
    se.statement(s, &mut Vec::new())
}

/// Truth of `s` under every valuation of `vars` and every interpretation of
/// the statement's free nominals.
pub fn frame_valid(frame: &KripkeFrame, s: &Statement, vars: &[String]) -> Result<bool, SemanticsError> {
    let mut vars: Vec<&String> = vars.iter().collect();
    vars.sort();
    vars.dedup();
    let noms: Vec<String> = s.free_nominals().into_iter().collect();
    let n = frame.size();
    let all = frame.all_worlds();
    let prop_combos = 1u64
        .checked_shl((n * vars.len()) as u32)
        .filter(|_| n * vars.len() < 64)
        .ok_or(SemanticsError::FrameTooLarge { worlds: n, max: 63 / vars.len().max(1) })?;
    let nom_combos = n.pow(noms.len() as u32);

    let mut val = Valuation::new();
    for c in 0..prop_combos {
        for (t, p) in vars.iter().enumerate() {
            val.set_prop(p, (c >> (t * n)) & all);
        }
        for mut k in 0..nom_combos {
            for i in &noms {
                val.set_nom(i, k % n);
                k /= n;
            }
            if !eval_statement(frame, &val, s)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `F ⊩ φ`, checked as `⊤ ≤ φ` over the variables of `φ`.
pub fn frame_valid_formula(frame: &KripkeFrame, f: &Formula) -> Result<bool, SemanticsError> {
    let vars: Vec<String> = f.props().into_iter().collect();
    frame_valid(frame, &Statement::formula(f.clone()), &vars)
}

/// All `2^(n²)` frames on `n` worlds, ordered by edge bitmask.
#[derive(Clone, Debug)]
pub struct FrameIter {
    n: usize,
    next: u64,
    end: u64,
}

impl Iterator for FrameIter {
    type Item = KripkeFrame;

    fn next(&mut self) -> Option<KripkeFrame> {
        if self.next >= self.end {
            return None;
        }
        let f = KripkeFrame::from_bits(self.n, self.next).ok()?;
        self.next += 1;
        Some(f)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for FrameIter {}

pub fn enumerate_frames(n: usize) -> Result<FrameIter, SemanticsError> {
    enumerate_frames_capped(n, DEFAULT_FRAME_CAP)
}

pub fn enumerate_frames_capped(n: usize, cap: usize) -> Result<FrameIter, SemanticsError> {
    let cap = cap.min(HARD_FRAME_CAP);
    if n == 0 {
        return Err(SemanticsError::EmptyFrame);
    }
    if n > cap {
        return Err(SemanticsError::CapExceeded { requested: n, cap });
    }
    Ok(FrameIter { n, next: 0, end: 1u64 << (n * n) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{nom, parse_formula, EdgeLabelSet};

    #[test]
    fn frame_counts() {
        assert_eq!(enumerate_frames(1).unwrap().count(), 2);
        assert_eq!(enumerate_frames(2).unwrap().count(), 16);
        assert_eq!(enumerate_frames(3).unwrap().count(), 512);
        assert!(enumerate_frames(4).is_err());
        assert_eq!(enumerate_frames_capped(4, 4).unwrap().len(), 65536);
        assert!(enumerate_frames_capped(5, 9).is_err());
        let firsts: Vec<_> = enumerate_frames(1).unwrap().map(|f| f.r0()).collect();
        assert_eq!(firsts, vec![0, 1]);
    }

    #[test]
    fn reflexivity_axiom() {
        let t = parse_formula("[]p -> p").unwrap();
        let looped = KripkeFrame::new(1, &[(0, 0)]).unwrap();
        let bare = KripkeFrame::new(1, &[]).unwrap();
        assert!(frame_valid_formula(&looped, &t).unwrap());
        assert!(!frame_valid_formula(&bare, &t).unwrap());
    }

    #[test]
    fn bottom_below_top() {
        let f = KripkeFrame::new(2, &[(0, 1)]).unwrap();
        let s = Statement::Ineq(Ineq::plain(Formula::Bot, Formula::Top));
        assert!(eval_statement(&f, &Valuation::new(), &s).unwrap());
    }

    #[test]
    fn nominal_edge_inequality() {
        let f = KripkeFrame::new(2, &[(0, 1)]).unwrap();
        let v = Valuation::new().with_nom("i", 0).with_nom("j", 1);
        let s = Statement::Ineq(Ineq::plain(nom("i"), Formula::ldia(EdgeLabelSet::new(), nom("j"))));
        assert!(eval_statement(&f, &v, &s).unwrap());
    }

    #[test]
    fn guarded_mega_on_single_loop() {
        let f = KripkeFrame::new(1, &[(0, 0)]).unwrap();
        let body = Mega::Leaf(Ineq::plain(nom("i"), nom("j")));
        let m = Statement::Mega(Mega::guarded("i", "j", EdgeLabelSet::new(), body));
        assert!(eval_statement(&f, &Valuation::new(), &m).unwrap());
        let f2 = KripkeFrame::new(2, &[(0, 1)]).unwrap();
        assert!(!eval_statement(&f2, &Valuation::new(), &m).unwrap());
    }

    #[test]
    fn box_below_sabotage_box() {
        let s = parse_formula("[]p -> [!]p").unwrap();
        let f = KripkeFrame::new(2, &[(0, 1)]).unwrap();
        assert!(!frame_valid_formula(&f, &s).unwrap());
        let empty = KripkeFrame::new(2, &[]).unwrap();
        assert!(frame_valid_formula(&empty, &s).unwrap());
        let v = parse_formula("<!>top -> <>top").unwrap();
        assert!(frame_valid_formula(&empty, &v).unwrap());
    }
}
