use crate::semantics::{Ineq, Mega, QuasiUq, Statement, UqIneq};
use crate::syntax::{EdgeLabelSet, Formula};

use super::{FOFormula, FOTerm};

/// The parameters of `ST^E_x`: the already-deleted edges `E` and the
/// designated variable `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationContext {
    pub e: Vec<(FOTerm, FOTerm)>,
    pub x: FOTerm,
}

impl TranslationContext {
    pub fn new(x: FOTerm) -> Self {
        TranslationContext { e: Vec::new(), x }
    }

    pub fn with_edges(x: FOTerm, e: Vec<(FOTerm, FOTerm)>) -> Self {
        TranslationContext { e, x }
    }
}

fn var_index(t: &FOTerm) -> Option<usize> {
    match t {
        FOTerm::Var(s) => s.strip_prefix('y')?.parse().ok(),
        FOTerm::Nom(_) => None,
    }
}

fn nominal_order(a: &String, b: &String) -> std::cmp::Ordering {
    (a.len(), a).cmp(&(b.len(), b))
}

struct Translator {
    next: usize,
    /// Innermost binding last: what each nominal name currently denotes.
    scope: Vec<(String, FOTerm)>,
}

impl Translator {
    fn new(next: usize) -> Self {
        Translator { next, scope: Vec::new() }
    }

    fn fresh(&mut self) -> FOTerm {
        let t = FOTerm::Var(format!("y{}", self.next));
        self.next += 1;
        t
    }

    fn resolve(&self, i: &str) -> FOTerm {
        self.scope.iter().rev().find(|(n, _)| n == i).map(|(_, t)| t.clone()).unwrap_or_else(|| FOTerm::nom(i))
    }

    fn label_pairs(&self, s: &EdgeLabelSet) -> Vec<(FOTerm, FOTerm)> {
        s.iter().map(|(a, b)| (self.resolve(a), self.resolve(b))).collect()
    }

    /// The term a new binder for `i` quantifies over: `i` itself, or a fresh
    /// variable when `i` already occurs in `taken` and would be captured.
    fn bind(&mut self, i: &str, taken: &[(FOTerm, FOTerm)]) -> FOTerm {
        let own = FOTerm::nom(i);
        let t = if taken.iter().any(|(a, b)| *a == own || *b == own) { self.fresh() } else { own };
        self.scope.push((i.to_string(), t.clone()));
        t
    }

    fn nominal_quantifier(&mut self, e: &[(FOTerm, FOTerm)], x: &FOTerm, i: &str, a: &Formula, universal: bool) -> FOFormula {
        let t = self.bind(i, e);
        let body = self.formula(e, x, a);
        self.scope.pop();
        if universal {
            FOFormula::forall(t, body)
        } else {
            FOFormula::exists(t, body)
        }
    }

    /// `⋀ ¬(a = v ∧ b = w)` over the pairs, as a list of conjuncts.
    fn exclusions(pairs: &[(FOTerm, FOTerm)], a: &FOTerm, b: &FOTerm) -> Vec<FOFormula> {
        pairs
            .iter()
            .map(|(v, w)| {
                FOFormula::not(FOFormula::And(vec![
                    FOFormula::Eq(a.clone(), v.clone()),
                    FOFormula::Eq(b.clone(), w.clone()),
                ]))
            })
            .collect()
    }

    fn guard(r: FOFormula, excl: Vec<FOFormula>) -> FOFormula {
        if excl.is_empty() {
            r
        } else {
            let mut parts = vec![r];
            parts.extend(excl);
            FOFormula::And(parts)
        }
    }

    fn formula(&mut self, e: &[(FOTerm, FOTerm)], x: &FOTerm, f: &Formula) -> FOFormula {
        use Formula::*;
        match f {
            Bot => FOFormula::neq(x.clone(), x.clone()),
            Top => FOFormula::Eq(x.clone(), x.clone()),
            Nom(i) => FOFormula::Eq(x.clone(), self.resolve(i)),
            Prop(p) => FOFormula::P(p.clone(), x.clone()),
            Not(a) => FOFormula::not(self.formula(e, x, a)),
            And(a, b) => FOFormula::And(vec![self.formula(e, x, a), self.formula(e, x, b)]),
            Or(a, b) => FOFormula::Or(vec![self.formula(e, x, a), self.formula(e, x, b)]),
            Imp(a, b) => FOFormula::imp(self.formula(e, x, a), self.formula(e, x, b)),
            Iff(a, b) => {
                let (ta, tb) = (self.formula(e, x, a), self.formula(e, x, b));
                FOFormula::And(vec![FOFormula::imp(ta.clone(), tb.clone()), FOFormula::imp(tb, ta)])
            }
            Box(a) | Dia(a) => {
                let y = self.fresh();
                let g = Self::guard(FOFormula::R(x.clone(), y.clone()), Self::exclusions(e, x, &y));
                let body = self.formula(e, &y, a);
                if matches!(f, Box(_)) {
                    FOFormula::forall(y, FOFormula::imp(g, body))
                } else {
                    FOFormula::exists(y, FOFormula::and_all([g, body]))
                }
            }
            SBox(a) | SDia(a) => {
                let y = self.fresh();
                let z = self.fresh();
                let g = Self::guard(FOFormula::R(y.clone(), z.clone()), Self::exclusions(e, &y, &z));
                let mut e2 = e.to_vec();
                e2.push((y.clone(), z.clone()));
                let body = self.formula(&e2, x, a);
                let inner = if matches!(f, SBox(_)) {
                    FOFormula::imp(g, body)
                } else {
                    FOFormula::and_all([g, body])
                };
                let quant = if matches!(f, SBox(_)) { FOFormula::forall } else { FOFormula::exists };
                quant(y, quant(z, inner))
            }
            LBox(s, a) | LDia(s, a) | InvLBox(s, a) | InvLDia(s, a) => {
                let y = self.fresh();
                let pairs = self.label_pairs(s);
                let (from, to) = match f {
                    LBox(..) | LDia(..) => (x, &y),
                    _ => (&y, x),
                };
                let g = Self::guard(FOFormula::R(from.clone(), to.clone()), Self::exclusions(&pairs, from, to));
                let body = self.formula(e, &y, a);
                match f {
                    LBox(..) | InvLBox(..) => FOFormula::forall(y, FOFormula::imp(g, body)),
                    _ => FOFormula::exists(y, FOFormula::and_all([g, body])),
                }
            }
            GBox(a) => {
                let y = self.fresh();
                let body = self.formula(e, &y, a);
                FOFormula::forall(y, body)
            }
            GDia(a) => {
                let y = self.fresh();
                let body = self.formula(e, &y, a);
                FOFormula::exists(y, body)
            }
            ForallNom(i, a) => self.nominal_quantifier(e, x, i, a, true),
            ExistsNom(i, a) => self.nominal_quantifier(e, x, i, a, false),
        }
    }

    fn ineq(&mut self, i: &Ineq) -> FOFormula {
        let x = FOTerm::var("x");
        let l = self.formula(&self.label_pairs(&i.sup), &x, &i.lhs);
        let r = self.formula(&self.label_pairs(&i.sub), &x, &i.rhs);
        FOFormula::forall(x, FOFormula::imp(l, r))
    }

    fn mega(&mut self, m: &Mega) -> FOFormula {
        match m {
            Mega::Leaf(i) => self.ineq(i),
            Mega::Conj(a, b) => FOFormula::And(vec![self.mega(a), self.mega(b)]),
            Mega::Guarded { from, to, label, body } => {
                let pairs = self.label_pairs(label);
                let i = self.bind(from, &pairs);
                let j = self.bind(to, &pairs);
                let g = Self::guard(FOFormula::R(i.clone(), j.clone()), Self::exclusions(&pairs, &i, &j));
                let b = self.mega(body);
                self.scope.truncate(self.scope.len() - 2);
                FOFormula::forall(i, FOFormula::forall(j, FOFormula::imp(g, b)))
            }
        }
    }

    fn uq(&mut self, u: &UqIneq) -> FOFormula {
        let terms: Vec<FOTerm> = u.binders.iter().map(|b| self.bind(b, &[])).collect();
        let body = self.ineq(&u.body);
        self.scope.truncate(self.scope.len() - terms.len());
        FOFormula::forall_many(terms, body)
    }

    fn quasi(&mut self, q: &QuasiUq) -> FOFormula {
        let conclusion = self.uq(&q.conclusion);
        if q.premises.is_empty() {
            return conclusion;
        }
        let premises = q.premises.iter().map(|p| self.uq(p)).collect();
        FOFormula::imp(FOFormula::And(premises), conclusion)
    }

    fn statement(&mut self, s: &Statement) -> FOFormula {
        match s {
            Statement::Ineq(i) => self.ineq(i),
            Statement::Mega(m) => self.mega(m),
            Statement::UqIneq(u) => self.uq(u),
            Statement::QuasiUq(q) => self.quasi(q),
        }
    }
}

/// `ST^E_x(f)`. Bound variables are `y0, y1, …`, numbered past any `yN`
/// already used in the context.
pub fn st_formula(ctx: &TranslationContext, f: &Formula) -> FOFormula {
    let next = ctx
        .e
        .iter()
        .flat_map(|(a, b)| [a, b])
        .chain(std::iter::once(&ctx.x))
        .filter_map(var_index)
        .map(|k| k + 1)
        .max()
        .unwrap_or(0);
    Translator::new(next).formula(&ctx.e, &ctx.x, f)
}

/// The global translation of a statement; free nominals stay free.
pub fn st_statement(s: &Statement) -> FOFormula {
    Translator::new(0).statement(s)
}

/// The conjunction, over the given quasi-inequalities, of the universal
/// closure of each translation over its free nominals.
pub fn correspondent(outputs: &[QuasiUq]) -> FOFormula {
    let mut tr = Translator::new(0);
    let parts: Vec<FOFormula> = outputs
        .iter()
        .map(|q| {
            let mut free: Vec<String> = Statement::QuasiUq(q.clone()).free_nominals().into_iter().collect();
            free.sort_by(nominal_order);
            let body = tr.quasi(q);
            FOFormula::forall_many(free.into_iter().map(FOTerm::Nom), body)
        })
        .collect();
    FOFormula::and_all(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, Formula};

    fn st(f: &str) -> String {
        st_formula(&TranslationContext::new(FOTerm::var("x")), &parse_formula(f).unwrap()).to_string()
    }

    #[test]
    fn diamond_clause() {
        assert_eq!(st("<>p"), "exists y0. R(x,y0) & P_p(y0)");
    }

    #[test]
    fn sabotage_diamond_clause() {
        assert_eq!(st("<!>p"), "exists y0. exists y1. R(y0,y1) & P_p(x)");
    }

    #[test]
    fn exclusions_from_context() {
        let ctx = TranslationContext::with_edges(FOTerm::var("x"), vec![(FOTerm::var("y0"), FOTerm::var("y1"))]);
        assert_eq!(
            st_formula(&ctx, &Formula::dia(Formula::Top)).to_string(),
            "exists y2. R(x,y2) & ~(x = y0 & y2 = y1) & y2 = y2"
        );
    }

    #[test]
    fn statement_clauses() {
        let bot_top = Statement::Ineq(Ineq::plain(Formula::Bot, Formula::Top));
        assert_eq!(st_statement(&bot_top).to_string(), "forall x. x != x -> x = x");
        let i = Ineq::plain(Formula::Nom("i".into()), Formula::ldia(EdgeLabelSet::new(), Formula::Nom("j".into())));
        assert_eq!(st_statement(&Statement::Ineq(i)).to_string(), "forall x. x = i -> (exists y0. R(x,y0) & y0 = j)");
        let m = Mega::guarded("i2", "i3", EdgeLabelSet::new(), Mega::Leaf(Ineq::plain(Formula::Top, Formula::Top)));
        assert_eq!(
            st_statement(&Statement::Mega(m)).to_string(),
            "forall i2. forall i3. R(i2,i3) -> (forall x. x = x -> x = x)"
        );
    }
}
