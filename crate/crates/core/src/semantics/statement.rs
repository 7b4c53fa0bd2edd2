use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{EdgeLabelSet, Formula};

/// `lhs ≤^sup_sub rhs`: at every world, `lhs` evaluated with the edges named
/// by `sup` removed implies `rhs` evaluated with the edges of `sub` removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ineq {
    pub lhs: Formula,
    pub rhs: Formula,
    pub sup: EdgeLabelSet,
    pub sub: EdgeLabelSet,
}

impl Ineq {
    pub fn new(lhs: Formula, rhs: Formula, sup: EdgeLabelSet, sub: EdgeLabelSet) -> Self {
        Ineq { lhs, rhs, sup, sub }
    }

    /// Both contexts empty.
    pub fn plain(lhs: Formula, rhs: Formula) -> Self {
        Ineq::new(lhs, rhs, EdgeLabelSet::new(), EdgeLabelSet::new())
    }

    pub fn has_empty_contexts(&self) -> bool {
        self.sup.is_empty() && self.sub.is_empty()
    }

    pub fn is_pure(&self) -> bool {
        self.lhs.is_pure() && self.rhs.is_pure()
    }

    pub fn props(&self) -> BTreeSet<String> {
        let mut s = self.lhs.props();
        s.extend(self.rhs.props());
        s
    }

    pub fn free_nominals(&self) -> BTreeSet<String> {
        let mut s = self.lhs.free_nominals();
        s.extend(self.rhs.free_nominals());
        s.extend(self.sup.nominals().map(str::to_string));
        s.extend(self.sub.nominals().map(str::to_string));
        s
    }

    pub fn all_nominals(&self) -> BTreeSet<String> {
        let mut s = self.lhs.all_nominals();
        s.extend(self.rhs.all_nominals());
        s.extend(self.sup.nominals().map(str::to_string));
        s.extend(self.sub.nominals().map(str::to_string));
        s
    }

    pub fn map_sides(&self, mut f: impl FnMut(&Formula) -> Formula) -> Ineq {
        Ineq::new(f(&self.lhs), f(&self.rhs), self.sup.clone(), self.sub.clone())
    }
}

/// Inequalities closed under conjunction and edge-guarded quantification
/// `∀from ∀to (from ≤^label_label ◇^label to ⇒ body)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mega {
    Leaf(Ineq),
    Conj(Box<Mega>, Box<Mega>),
    Guarded { from: String, to: String, label: EdgeLabelSet, body: Box<Mega> },
}

impl Mega {
    pub fn guarded(from: &str, to: &str, label: EdgeLabelSet, body: Mega) -> Mega {
        Mega::Guarded { from: from.to_string(), to: to.to_string(), label, body: Box::new(body) }
    }

    pub fn conj(a: Mega, b: Mega) -> Mega {
        Mega::Conj(Box::new(a), Box::new(b))
    }

    /// The guard inequality `from ≤^label_label ◇^label to`.
    pub fn guard_ineq(from: &str, to: &str, label: &EdgeLabelSet) -> Ineq {
        Ineq::new(
            Formula::Nom(from.to_string()),
            Formula::ldia(label.clone(), Formula::Nom(to.to_string())),
            label.clone(),
            label.clone(),
        )
    }

    pub fn leaves(&self) -> Vec<&Ineq> {
        match self {
            Mega::Leaf(i) => vec![i],
            Mega::Conj(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
            Mega::Guarded { body, .. } => body.leaves(),
        }
    }

    pub fn is_pure(&self) -> bool {
        self.leaves().iter().all(|i| i.is_pure())
    }

    pub fn props(&self) -> BTreeSet<String> {
        self.leaves().iter().flat_map(|i| i.props()).collect()
    }

    pub fn free_nominals(&self) -> BTreeSet<String> {
        match self {
            Mega::Leaf(i) => i.free_nominals(),
            Mega::Conj(a, b) => {
                let mut s = a.free_nominals();
                s.extend(b.free_nominals());
                s
            }
            Mega::Guarded { from, to, label, body } => {
                let mut s = body.free_nominals();
                s.remove(from);
                s.remove(to);
                s.extend(label.nominals().map(str::to_string));
                s
            }
        }
    }

    pub fn all_nominals(&self) -> BTreeSet<String> {
        match self {
            Mega::Leaf(i) => i.all_nominals(),
            Mega::Conj(a, b) => {
                let mut s = a.all_nominals();
                s.extend(b.all_nominals());
                s
            }
            Mega::Guarded { from, to, label, body } => {
                let mut s = body.all_nominals();
                s.insert(from.clone());
                s.insert(to.clone());
                s.extend(label.nominals().map(str::to_string));
                s
            }
        }
    }

    pub fn map_leaves(&self, f: &mut impl FnMut(&Ineq) -> Ineq) -> Mega {
        match self {
            Mega::Leaf(i) => Mega::Leaf(f(i)),
            Mega::Conj(a, b) => Mega::conj(a.map_leaves(f), b.map_leaves(f)),
            Mega::Guarded { from, to, label, body } => Mega::Guarded {
                from: from.clone(),
                to: to.clone(),
                label: label.clone(),
                body: Box::new(body.map_leaves(f)),
            },
        }
    }
}

/// `∀binders. body`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UqIneq {
    pub binders: Vec<String>,
    pub body: Ineq,
}

impl UqIneq {
    pub fn new(binders: Vec<String>, body: Ineq) -> Self {
        UqIneq { binders, body }
    }

    pub fn unquantified(body: Ineq) -> Self {
        UqIneq { binders: Vec::new(), body }
    }

    pub fn free_nominals(&self) -> BTreeSet<String> {
        let mut s = self.body.free_nominals();
        for b in &self.binders {
            s.remove(b);
        }
        s
    }

    pub fn all_nominals(&self) -> BTreeSet<String> {
        let mut s = self.body.all_nominals();
        s.extend(self.binders.iter().cloned());
        s
    }
}

/// `premises ⇒ conclusion`, read at the level of a model.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiUq {
    pub premises: Vec<UqIneq>,
    pub conclusion: UqIneq,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Statement {
    Ineq(Ineq),
    Mega(Mega),
    UqIneq(UqIneq),
    QuasiUq(QuasiUq),
}

impl Statement {
    /// A bare formula `φ`, read as `⊤ ≤ φ`.
    pub fn formula(f: Formula) -> Statement {
        Statement::Ineq(Ineq::plain(Formula::Top, f))
    }

    pub fn free_nominals(&self) -> BTreeSet<String> {
        match self {
            Statement::Ineq(i) => i.free_nominals(),
            Statement::Mega(m) => m.free_nominals(),
            Statement::UqIneq(u) => u.free_nominals(),
            Statement::QuasiUq(q) => {
                let mut s = q.conclusion.free_nominals();
                for p in &q.premises {
                    s.extend(p.free_nominals());
                }
                s
            }
        }
    }

    pub fn all_nominals(&self) -> BTreeSet<String> {
        match self {
            Statement::Ineq(i) => i.all_nominals(),
            Statement::Mega(m) => m.all_nominals(),
            Statement::UqIneq(u) => u.all_nominals(),
            Statement::QuasiUq(q) => {
                let mut s = q.conclusion.all_nominals();
                for p in &q.premises {
                    s.extend(p.all_nominals());
                }
                s
            }
        }
    }

    pub fn props(&self) -> BTreeSet<String> {
        match self {
            Statement::Ineq(i) => i.props(),
            Statement::Mega(m) => m.props(),
            Statement::UqIneq(u) => u.body.props(),
            Statement::QuasiUq(q) => {
                let mut s = q.conclusion.body.props();
                for p in &q.premises {
                    s.extend(p.body.props());
                }
                s
            }
        }
    }

    pub fn is_pure(&self) -> bool {
        self.props().is_empty()
    }

    /// Every formula in the statement, including guard formulas.
    pub fn formulas(&self) -> Vec<Formula> {
        let sides = |i: &Ineq| vec![i.lhs.clone(), i.rhs.clone()];
        match self {
            Statement::Ineq(i) => sides(i),
            Statement::Mega(m) => {
                let mut out = Vec::new();
                collect_mega_formulas(m, &mut out);
                out
            }
            Statement::UqIneq(u) => sides(&u.body),
            Statement::QuasiUq(q) => q
                .premises
                .iter()
                .chain(std::iter::once(&q.conclusion))
                .flat_map(|u| sides(&u.body))
                .collect(),
        }
    }
}

fn collect_mega_formulas(m: &Mega, out: &mut Vec<Formula>) {
    match m {
        Mega::Leaf(i) => {
            out.push(i.lhs.clone());
            out.push(i.rhs.clone());
        }
        Mega::Conj(a, b) => {
            collect_mega_formulas(a, out);
            collect_mega_formulas(b, out);
        }
        Mega::Guarded { from, to, label, body } => {
            let g = Mega::guard_ineq(from, to, label);
            out.push(g.lhs);
            out.push(g.rhs);
            collect_mega_formulas(body, out);
        }
    }
}

impl fmt::Display for Ineq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.has_empty_contexts() {
            write!(f, "{} <= {}", self.lhs, self.rhs)
        } else {
            write!(f, "{} <=^{{{}}}_{{{}}} {}", self.lhs, self.sup, self.sub, self.rhs)
        }
    }
}

impl fmt::Display for Mega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mega::Leaf(i) => write!(f, "{i}"),
            Mega::Conj(a, b) => write!(f, "{a} && {b}"),
            Mega::Guarded { from, to, label, body } => {
                let guard = Mega::guard_ineq(from, to, label);
                write!(f, "forall {from} {to}. ({guard} => {body})")
            }
        }
    }
}

impl fmt::Display for UqIneq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.binders.is_empty() {
            write!(f, "{}", self.body)
        } else {
            write!(f, "forall {}. ({})", self.binders.join(" "), self.body)
        }
    }
}

impl fmt::Display for QuasiUq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let premises: Vec<String> = self.premises.iter().map(ToString::to_string).collect();
        if premises.is_empty() {
            write!(f, "=> {}", self.conclusion)
        } else {
            write!(f, "{} => {}", premises.join(" && "), self.conclusion)
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Ineq(i) => i.fmt(f),
            Statement::Mega(m) => m.fmt(f),
            Statement::UqIneq(u) => u.fmt(f),
            Statement::QuasiUq(q) => q.fmt(f),
        }
    }
}

impl From<Ineq> for Statement {
    fn from(i: Ineq) -> Self {
        Statement::Ineq(i)
    }
}

impl From<Mega> for Statement {
    fn from(m: Mega) -> Self {
        Statement::Mega(m)
    }
}

impl From<UqIneq> for Statement {
    fn from(u: UqIneq) -> Self {
        Statement::UqIneq(u)
    }
}

impl From<QuasiUq> for Statement {
    fn from(q: QuasiUq) -> Self {
        Statement::QuasiUq(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{nom, prop};

    #[test]
    fn printing() {
        let s = EdgeLabelSet::singleton("i2", "i3");
        let leaf = Ineq::new(Formula::Top, Formula::not(nom("i1")), s, EdgeLabelSet::new());
        assert_eq!(leaf.to_string(), "top <=^{(i2,i3)}_{} ~i1");
        let m = Mega::guarded("i2", "i3", EdgeLabelSet::new(), Mega::Leaf(leaf));
        assert_eq!(
            m.to_string(),
            "forall i2 i3. (i2 <= dia^{} i3 => top <=^{(i2,i3)}_{} ~i1)"
        );
        assert_eq!(m.free_nominals().into_iter().collect::<Vec<_>>(), vec!["i1".to_string()]);
        let u = UqIneq::new(vec!["i2".into()], Ineq::plain(nom("i2"), prop("p")));
        assert_eq!(u.to_string(), "forall i2. (i2 <= p)");
        assert!(u.free_nominals().is_empty());
    }
}
