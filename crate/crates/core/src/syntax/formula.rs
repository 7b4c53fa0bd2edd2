use std::collections::BTreeSet;
use std::fmt;

/// A finite set of directed nominal pairs `(i, j)`, each naming an edge to be
/// read as deleted from the starting relation.
///
/// Pairs are kept in a `BTreeSet`, so duplicates collapse and printing is
/// deterministic. Two distinct pairs may still denote the same concrete edge.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeLabelSet(BTreeSet<(String, String)>);

impl EdgeLabelSet {
    pub fn new() -> Self {
        EdgeLabelSet(BTreeSet::new())
    }

    pub fn singleton(from: impl Into<String>, to: impl Into<String>) -> Self {
        let mut s = Self::new();
        s.insert(from, to);
        s
    }

    pub fn insert(&mut self, from: impl Into<String>, to: impl Into<String>) {
        self.0.insert((from.into(), to.into()));
    }

    /// `self ∪ {(from, to)}`.
    pub fn with(&self, from: impl Into<String>, to: impl Into<String>) -> Self {
        let mut s = self.clone();
        s.insert(from, to);
        s
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(String, String)> {
        self.0.iter()
    }

    pub fn nominals(&self) -> impl Iterator<Item = &str> {
        self.0.iter().flat_map(|(a, b)| [a.as_str(), b.as_str()])
    }
}

impl FromIterator<(String, String)> for EdgeLabelSet {
    fn from_iter<T: IntoIterator<Item = (String, String)>>(iter: T) -> Self {
        EdgeLabelSet(iter.into_iter().collect())
    }
}

impl fmt::Display for EdgeLabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, b) in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

/// Formulas of the base sabotage language and of the expanded language the
/// rewrite engine works in.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Bot,
    Top,
    Prop(String),
    Nom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Dia(Box<Formula>),
    /// Sabotage box: for every edge of the current relation, after deleting it.
    SBox(Box<Formula>),
    /// Sabotage diamond: for some edge of the current relation, after deleting it.
    SDia(Box<Formula>),
    LBox(EdgeLabelSet, Box<Formula>),
    LDia(EdgeLabelSet, Box<Formula>),
    InvLBox(EdgeLabelSet, Box<Formula>),
    InvLDia(EdgeLabelSet, Box<Formula>),
    GBox(Box<Formula>),
    GDia(Box<Formula>),
    ForallNom(String, Box<Formula>),
    ExistsNom(String, Box<Formula>),
}

/// Polarity of a propositional variable in a formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
    Both,
    Absent,
}

impl Polarity {
    pub fn flip(self) -> Self {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
            other => other,
        }
    }

    pub fn join(self, other: Polarity) -> Polarity {
        use Polarity::*;
        match (self, other) {
            (Absent, x) | (x, Absent) => x,
            (a, b) if a == b => a,
            _ => Both,
        }
    }
}

pub fn prop(name: &str) -> Formula {
    Formula::Prop(name.to_string())
}

pub fn nom(name: &str) -> Formula {
    Formula::Nom(name.to_string())
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }
    pub fn boxed(f: Formula) -> Formula {
        Formula::Box(Box::new(f))
    }
    pub fn dia(f: Formula) -> Formula {
        Formula::Dia(Box::new(f))
    }
    pub fn sbox(f: Formula) -> Formula {
        Formula::SBox(Box::new(f))
    }
    pub fn sdia(f: Formula) -> Formula {
        Formula::SDia(Box::new(f))
    }
    pub fn lbox(s: EdgeLabelSet, f: Formula) -> Formula {
        Formula::LBox(s, Box::new(f))
    }
    pub fn ldia(s: EdgeLabelSet, f: Formula) -> Formula {
        Formula::LDia(s, Box::new(f))
    }
    pub fn inv_lbox(s: EdgeLabelSet, f: Formula) -> Formula {
        Formula::InvLBox(s, Box::new(f))
    }
    pub fn inv_ldia(s: EdgeLabelSet, f: Formula) -> Formula {
        Formula::InvLDia(s, Box::new(f))
    }
    pub fn gbox(f: Formula) -> Formula {
        Formula::GBox(Box::new(f))
    }
    pub fn gdia(f: Formula) -> Formula {
        Formula::GDia(Box::new(f))
    }
    pub fn forall_nom(i: &str, f: Formula) -> Formula {
        Formula::ForallNom(i.to_string(), Box::new(f))
    }
    pub fn exists_nom(i: &str, f: Formula) -> Formula {
        Formula::ExistsNom(i.to_string(), Box::new(f))
    }

    /// Conjunction of a list; `Top` when empty.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut it = items.into_iter();
        match it.next() {
            None => Formula::Top,
            Some(first) => it.fold(first, Formula::and),
        }
    }

    /// Disjunction of a list; `Bot` when empty.
    pub fn disj(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut it = items.into_iter();
        match it.next() {
            None => Formula::Bot,
            Some(first) => it.fold(first, Formula::or),
        }
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            Bot | Top | Prop(_) | Nom(_) => vec![],
            Not(a) | Box(a) | Dia(a) | SBox(a) | SDia(a) | GBox(a) | GDia(a) => vec![a],
            LBox(_, a) | LDia(_, a) | InvLBox(_, a) | InvLDia(_, a) => vec![a],
            ForallNom(_, a) | ExistsNom(_, a) => vec![a],
            And(a, b) | Or(a, b) | Imp(a, b) | Iff(a, b) => vec![a, b],
        }
    }

    /// Rebuild this node with its children mapped through `f`.
    pub fn map_children(&self, mut f: impl FnMut(&Formula) -> Formula) -> Formula {
        use Formula::*;
        let b = |x: Formula| std::boxed::Box::new(x);
        match self {
            Bot | Top | Prop(_) | Nom(_) => self.clone(),
            Not(a) => Not(b(f(a))),
            And(x, y) => And(b(f(x)), b(f(y))),
            Or(x, y) => Or(b(f(x)), b(f(y))),
            Imp(x, y) => Imp(b(f(x)), b(f(y))),
            Iff(x, y) => Iff(b(f(x)), b(f(y))),
            Box(a) => Box(b(f(a))),
            Dia(a) => Dia(b(f(a))),
            SBox(a) => SBox(b(f(a))),
            SDia(a) => SDia(b(f(a))),
            LBox(s, a) => LBox(s.clone(), b(f(a))),
            LDia(s, a) => LDia(s.clone(), b(f(a))),
            InvLBox(s, a) => InvLBox(s.clone(), b(f(a))),
            InvLDia(s, a) => InvLDia(s.clone(), b(f(a))),
            GBox(a) => GBox(b(f(a))),
            GDia(a) => GDia(b(f(a))),
            ForallNom(i, a) => ForallNom(i.clone(), b(f(a))),
            ExistsNom(i, a) => ExistsNom(i.clone(), b(f(a))),
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    fn any_node(&self, pred: &impl Fn(&Formula) -> bool) -> bool {
        pred(self) || self.children().iter().any(|c| c.any_node(pred))
    }

    /// Only the constructors the parser can produce.
    pub fn is_base_language(&self) -> bool {
        use Formula::*;
        !self.any_node(&|f| {
            !matches!(
                f,
                Bot | Top | Prop(_) | Not(_) | And(..) | Or(..) | Imp(..) | Iff(..) | Box(_) | Dia(_)
                    | SBox(_) | SDia(_)
            )
        })
    }

    /// No sabotage modalities.
    pub fn is_static(&self) -> bool {
        !self.any_node(&|f| matches!(f, Formula::SBox(_) | Formula::SDia(_)))
    }

    /// No propositional variables.
    pub fn is_pure(&self) -> bool {
        !self.any_node(&|f| matches!(f, Formula::Prop(_)))
    }

    /// No contextual connectives (□, ◇, ■, ⧫): the truth set does not depend
    /// on which edges have already been deleted.
    pub fn is_context_free(&self) -> bool {
        !self.any_node(&|f| {
            matches!(f, Formula::Box(_) | Formula::Dia(_) | Formula::SBox(_) | Formula::SDia(_))
        })
    }

    pub fn contains_iff(&self) -> bool {
        self.any_node(&|f| matches!(f, Formula::Iff(..)))
    }

    /// Propositional variables, sorted.
    pub fn props(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_props(&mut out);
        out
    }

    fn collect_props(&self, out: &mut BTreeSet<String>) {
        if let Formula::Prop(p) = self {
            out.insert(p.clone());
        }
        for c in self.children() {
            c.collect_props(out);
        }
    }

    /// Every nominal name mentioned, bound or free, including those inside
    /// edge labels.
    pub fn all_nominals(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_all_nominals(&mut out);
        out
    }

    fn collect_all_nominals(&self, out: &mut BTreeSet<String>) {
        use Formula::*;
        match self {
            Nom(i) => {
                out.insert(i.clone());
            }
            LBox(s, _) | LDia(s, _) | InvLBox(s, _) | InvLDia(s, _) => {
                out.extend(s.nominals().map(str::to_string));
            }
            ForallNom(i, _) | ExistsNom(i, _) => {
                out.insert(i.clone());
            }
            _ => {}
        }
        for c in self.children() {
            c.collect_all_nominals(out);
        }
    }

    /// Nominals occurring free (not under a binder for the same name).
    pub fn free_nominals(&self) -> BTreeSet<String> {
        use Formula::*;
        let mut out = BTreeSet::new();
        match self {
            Nom(i) => {
                out.insert(i.clone());
            }
            LBox(s, _) | LDia(s, _) | InvLBox(s, _) | InvLDia(s, _) => {
                out.extend(s.nominals().map(str::to_string));
            }
            _ => {}
        }
        match self {
            ForallNom(i, a) | ExistsNom(i, a) => {
                let mut inner = a.free_nominals();
                inner.remove(i);
                out.extend(inner);
            }
            _ => {
                for c in self.children() {
                    out.extend(c.free_nominals());
                }
            }
        }
        out
    }

    /// Polarity of `p` counting a flip under `¬` and in the antecedent of
    /// `→`; any occurrence under `↔` counts as both.
    pub fn polarity(&self, p: &str) -> Polarity {
        use Formula::*;
        match self {
            Prop(q) if q == p => Polarity::Positive,
            Bot | Top | Prop(_) | Nom(_) => Polarity::Absent,
            Not(a) => a.polarity(p).flip(),
            Imp(a, b) => a.polarity(p).flip().join(b.polarity(p)),
            Iff(a, b) => match a.polarity(p).join(b.polarity(p)) {
                Polarity::Absent => Polarity::Absent,
                _ => Polarity::Both,
            },
            _ => self
                .children()
                .iter()
                .fold(Polarity::Absent, |acc, c| acc.join(c.polarity(p))),
        }
    }

    /// Replace every occurrence of variable `p` with `by`.
    pub fn substitute(&self, p: &str, by: &Formula) -> Formula {
        match self {
            Formula::Prop(q) if q == p => by.clone(),
            _ => self.map_children(|c| c.substitute(p, by)),
        }
    }

    /// Expand every `α ↔ β` into `(α → β) ∧ (β → α)`.
    pub fn eliminate_iff(&self) -> Formula {
        match self {
            Formula::Iff(a, b) => {
                let a = a.eliminate_iff();
                let b = b.eliminate_iff();
                Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
            }
            _ => self.map_children(Formula::eliminate_iff),
        }
    }

    /// Fold `¬⊤`, `¬⊥` and the boolean identities for `∧`, `∨`, `→` with a
    /// constant argument.
    pub fn fold_constants(&self) -> Formula {
        use Formula::*;
        let f = self.map_children(Formula::fold_constants);
        match f {
            Not(a) => match *a {
                Top => Bot,
                Bot => Top,
                a => Formula::not(a),
            },
            And(a, b) => match (*a, *b) {
                (Bot, _) | (_, Bot) => Bot,
                (Top, x) | (x, Top) => x,
                (a, b) => Formula::and(a, b),
            },
            Or(a, b) => match (*a, *b) {
                (Top, _) | (_, Top) => Top,
                (Bot, x) | (x, Bot) => x,
                (a, b) => Formula::or(a, b),
            },
            Imp(a, b) => match (*a, *b) {
                (Bot, _) | (_, Top) => Top,
                (Top, x) => x,
                (x, Bot) => Formula::not(x),
                (a, b) => Formula::imp(a, b),
            },
            other => other,
        }
    }
}
