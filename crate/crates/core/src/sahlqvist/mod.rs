//! Signed generation trees, outer/inner node classification and the
//! ε-Sahlqvist classifier.

use std::collections::BTreeMap;
use std::fmt;

use crate::syntax::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Head symbol of a generation-tree node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Connective {
    Or,
    And,
    Dia,
    Box,
    SDia,
    SBox,
    Not,
    Imp,
    Iff,
    /// Labelled, inverse and global modalities and nominal binders.
    Expanded(&'static str),
    Leaf(Formula),
}

impl Connective {
    pub fn of(f: &Formula) -> Connective {
        use Formula::*;
        match f {
            Or(..) => Connective::Or,
            And(..) => Connective::And,
            Dia(_) => Connective::Dia,
            Box(_) => Connective::Box,
            SDia(_) => Connective::SDia,
            SBox(_) => Connective::SBox,
            Not(_) => Connective::Not,
            Imp(..) => Connective::Imp,
            Iff(..) => Connective::Iff,
            LBox(..) => Connective::Expanded("box^S"),
            LDia(..) => Connective::Expanded("dia^S"),
            InvLBox(..) => Connective::Expanded("inv-box^S"),
            InvLDia(..) => Connective::Expanded("inv-dia^S"),
            GBox(_) => Connective::Expanded("A"),
            GDia(_) => Connective::Expanded("E"),
            ForallNom(..) => Connective::Expanded("forall"),
            ExistsNom(..) => Connective::Expanded("exists"),
            Bot | Top | Prop(_) | Nom(_) => Connective::Leaf(f.clone()),
        }
    }

    pub fn symbol(&self) -> String {
        match self {
            Connective::Or => "|".into(),
            Connective::And => "&".into(),
            Connective::Dia => "<>".into(),
            Connective::Box => "[]".into(),
            Connective::SDia => "<!>".into(),
            Connective::SBox => "[!]".into(),
            Connective::Not => "~".into(),
            Connective::Imp => "->".into(),
            Connective::Iff => "<->".into(),
            Connective::Expanded(s) => (*s).into(),
            Connective::Leaf(f) => f.to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NodeClass {
    pub is_outer: bool,
    pub is_inner: bool,
}

/// Table lookup of the outer/inner flags for a signed connective.
pub fn classify_node(c: &Connective, sign: Sign) -> NodeClass {
    use Connective as C;
    let (is_outer, is_inner) = match (sign, c) {
        (Sign::Plus, C::Or | C::Dia | C::SDia) => (true, false),
        (Sign::Plus, C::And | C::Not) => (true, true),
        (Sign::Plus, C::Box | C::SBox) => (false, true),
        (Sign::Plus, C::Imp) => (false, false),
        (Sign::Minus, C::And | C::Box | C::SBox | C::Imp) => (true, false),
        (Sign::Minus, C::Or | C::Not) => (true, true),
        (Sign::Minus, C::Dia | C::SDia) => (false, true),
        _ => (false, false),
    };
    NodeClass { is_outer, is_inner }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedTree {
    pub connective: Connective,
    pub sign: Sign,
    pub children: Vec<SignedTree>,
}

pub fn build_signed_tree(f: &Formula, sign: Sign) -> SignedTree {
    let children = match f {
        Formula::Not(a) => vec![build_signed_tree(a, sign.flip())],
        Formula::Imp(a, b) => vec![build_signed_tree(a, sign.flip()), build_signed_tree(b, sign)],
        _ => f.children().into_iter().map(|c| build_signed_tree(c, sign)).collect(),
    };
    SignedTree { connective: Connective::of(f), sign, children }
}

impl SignedTree {
    pub fn class(&self) -> NodeClass {
        classify_node(&self.connective, self.sign)
    }

    /// Every leaf together with its ancestors, ordered leaf-side first.
    pub fn branches(&self) -> Vec<Branch<'_>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_branches(&mut path, &mut out);
        out
    }

    fn collect_branches<'t>(&'t self, path: &mut Vec<&'t SignedTree>, out: &mut Vec<Branch<'t>>) {
        if self.children.is_empty() {
            out.push(Branch { leaf: self, ancestors: path.iter().rev().copied().collect() });
            return;
        }
        path.push(self);
        for c in &self.children {
            c.collect_branches(path, out);
        }
        path.pop();
    }

    /// Checks that each child's sign follows from its parent's.
    pub fn signs_consistent(&self) -> bool {
        self.children.iter().enumerate().all(|(k, c)| {
            let expected = match (&self.connective, k) {
                (Connective::Not, _) | (Connective::Imp, 0) => self.sign.flip(),
                _ => self.sign,
            };
            c.sign == expected && c.signs_consistent()
        })
    }
}

/// A leaf and the path from its parent up to the root.
#[derive(Clone, Debug)]
pub struct Branch<'t> {
    pub leaf: &'t SignedTree,
    pub ancestors: Vec<&'t SignedTree>,
}

impl Branch<'_> {
    pub fn variable(&self) -> Option<&str> {
        match &self.leaf.connective {
            Connective::Leaf(Formula::Prop(p)) => Some(p),
            _ => None,
        }
    }

    pub fn classes(&self) -> Vec<NodeClass> {
        self.ancestors.iter().map(|n| n.class()).collect()
    }

    /// `-[] +<!> ...` style rendering, leaf first.
    pub fn describe(&self) -> String {
        let mut parts = vec![format!("{}{}", self.leaf.sign, self.leaf.connective.symbol())];
        parts.extend(self.ancestors.iter().map(|n| format!("{}{}", n.sign, n.connective.symbol())));
        parts.join(" ")
    }
}

/// A leaf-to-root sequence splits into an inner segment followed by an
/// outer segment; nodes carrying both flags may sit on either side.
pub fn is_excellent_branch(branch: &[NodeClass]) -> bool {
    excellent_split(branch).is_some()
}

/// The longest inner prefix that leaves an all-outer remainder.
pub fn excellent_split(branch: &[NodeClass]) -> Option<usize> {
    (0..=branch.len())
        .rev()
        .find(|&k| branch[..k].iter().all(|c| c.is_inner) && branch[k..].iter().all(|c| c.is_outer))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eps {
    One,
    Dual,
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Eps::One => "1",
            Eps::Dual => "d",
        })
    }
}

/// Assignment of `1` or `∂` to each propositional variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OrderType(pub BTreeMap<String, Eps>);

impl OrderType {
    pub fn get(&self, p: &str) -> Eps {
        self.0.get(p).copied().unwrap_or(Eps::One)
    }

    pub fn with(mut self, p: &str, e: Eps) -> Self {
        self.0.insert(p.to_string(), e);
        self
    }

    /// `+p` with `ε(p) = 1`, or `−p` with `ε(p) = ∂`.
    pub fn is_critical(&self, p: &str, sign: Sign) -> bool {
        matches!((sign, self.get(p)), (Sign::Plus, Eps::One) | (Sign::Minus, Eps::Dual))
    }

    /// Parse `p=1,q=d` (also accepting `∂` and `D`).
    pub fn parse(spec: &str) -> Result<OrderType, String> {
        let mut out = OrderType::default();
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (p, e) = part.split_once('=').ok_or_else(|| format!("expected `var=1|d`, got `{part}`"))?;
            let e = match e.trim() {
                "1" => Eps::One,
                "d" | "D" | "∂" => Eps::Dual,
                other => return Err(format!("order-type value must be 1 or d, got `{other}`")),
            };
            out.0.insert(p.trim().to_string(), e);
        }
        Ok(out)
    }
}

impl fmt::Display for OrderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(p, e)| format!("{p}={e}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// The two signed trees of an inequality: `+lhs` and `−rhs`.
pub fn inequality_trees(lhs: &Formula, rhs: &Formula) -> [SignedTree; 2] {
    [build_signed_tree(lhs, Sign::Plus), build_signed_tree(rhs, Sign::Minus)]
}

fn critical_branches<'t>(trees: &'t [SignedTree], eps: &OrderType) -> Vec<Branch<'t>> {
    trees
        .iter()
        .flat_map(|t| t.branches())
        .filter(|b| b.variable().is_some_and(|p| eps.is_critical(p, b.leaf.sign)))
        .collect()
}

pub fn is_epsilon_sahlqvist(lhs: &Formula, rhs: &Formula, eps: &OrderType) -> bool {
    let trees = inequality_trees(lhs, rhs);
    critical_branches(&trees, eps).iter().all(|b| is_excellent_branch(&b.classes()))
}

/// First order-type (variables by name, `1` before `∂`) for which the
/// inequality is ε-Sahlqvist.
pub fn find_order_type(lhs: &Formula, rhs: &Formula) -> Option<OrderType> {
    let mut vars = lhs.props();
    vars.extend(rhs.props());
    let vars: Vec<String> = vars.into_iter().collect();
    let k = vars.len();
    (0u64..1 << k).find_map(|code| {
        let eps = OrderType(
            vars.iter()
                .enumerate()
                .map(|(t, p)| (p.clone(), if code >> (k - 1 - t) & 1 == 1 { Eps::Dual } else { Eps::One }))
                .collect(),
        );
        is_epsilon_sahlqvist(lhs, rhs, &eps).then_some(eps)
    })
}

/// No `+∨` or `−∧` on the outer part of any critical branch.
pub fn is_definite(trees: &[SignedTree], eps: &OrderType) -> bool {
    critical_branches(trees, eps).iter().all(|b| {
        let classes = b.classes();
        match excellent_split(&classes) {
            Some(k) => b.ancestors[k..].iter().all(|n| {
                !matches!((n.sign, &n.connective), (Sign::Plus, Connective::Or) | (Sign::Minus, Connective::And))
            }),
            None => false,
        }
    })
}

/// Every critical branch consists of inner nodes only.
pub fn is_inner_sahlqvist(trees: &[SignedTree], eps: &OrderType) -> bool {
    critical_branches(trees, eps).iter().all(|b| b.classes().iter().all(|c| c.is_inner))
}

/// No occurrence of `p` in the trees is ε-critical.
pub fn is_uniform_in(trees: &[SignedTree], p: &str, eps: &OrderType) -> bool {
    trees
        .iter()
        .flat_map(|t| t.branches())
        .filter(|b| b.variable() == Some(p))
        .all(|b| !eps.is_critical(p, b.leaf.sign))
}

/// Per-leaf report for the classifier front end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchReport {
    pub variable: String,
    pub side: &'static str,
    pub critical: bool,
    pub excellent: bool,
    pub path: String,
}

pub fn branch_reports(lhs: &Formula, rhs: &Formula, eps: &OrderType) -> Vec<BranchReport> {
    let trees = inequality_trees(lhs, rhs);
    let mut out = Vec::new();
    for (side, tree) in ["lhs", "rhs"].into_iter().zip(trees.iter()) {
        for b in tree.branches() {
            let Some(p) = b.variable() else { continue };
            let critical = eps.is_critical(p, b.leaf.sign);
            out.push(BranchReport {
                variable: p.to_string(),
                side,
                critical,
                excellent: is_excellent_branch(&b.classes()),
                path: b.describe(),
            });
        }
    }
    out
}
