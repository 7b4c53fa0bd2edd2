use crate::sahlqvist::{
    build_signed_tree, is_definite, is_epsilon_sahlqvist, is_inner_sahlqvist, Eps, OrderType, Sign,
};
use crate::semantics::{Ineq, QuasiUq, UqIneq};
use crate::syntax::{Formula, FreshNominals, Polarity};

use super::item::{is_plain_pure, Item, Side};
use super::rules::{inner_step, outer_step, pack_item, Rewrite};
use super::trace::{DerivationStep, Stage};
use super::{PreconditionError, StageError};

pub const GOAL_FROM: &str = "i0";
pub const GOAL_TO: &str = "i1";

/// `i0 ≤ ¬i1`.
pub fn goal() -> Ineq {
    Ineq::plain(Formula::Nom(GOAL_FROM.into()), Formula::not(Formula::Nom(GOAL_TO.into())))
}

/// The working set for one preprocessed inequality.
#[derive(Clone, Debug)]
pub struct System {
    pub items: Vec<Item>,
    pub goal: Ineq,
    pub order_type: OrderType,
    pub trace: Vec<DerivationStep>,
}

impl System {
    pub fn new(items: Vec<Item>, order_type: OrderType) -> System {
        System { items, goal: goal(), order_type, trace: Vec::new() }
    }

    /// Remove the items at `consumed` and append `produced`, skipping
    /// duplicates; the step is recorded in the trace.
    pub fn apply(&mut self, stage: Stage, rule: &str, consumed: &[usize], produced: Vec<Item>) {
        let mut idx = consumed.to_vec();
        idx.sort_unstable();
        let shown_consumed: Vec<String> = idx.iter().map(|&k| self.items[k].to_string()).collect();
        for &k in idx.iter().rev() {
            self.items.remove(k);
        }
        let mut shown_produced = Vec::new();
        for p in produced {
            let s = p.to_string();
            if !self.items.iter().any(|x| x.to_string() == s) {
                self.items.push(p);
            }
            shown_produced.push(s);
        }
        self.trace.push(DerivationStep::new(stage, rule, shown_consumed, shown_produced));
    }

    fn rewrite_to_fixpoint(
        &mut self,
        stage: Stage,
        fresh: &mut FreshNominals,
        step: fn(&Item, &mut FreshNominals) -> Option<Rewrite>,
    ) {
        loop {
            let hit = self.items.iter().enumerate().find_map(|(k, it)| step(it, fresh).map(|r| (k, r)));
            let Some((k, (rule, produced))) = hit else { return };
            self.apply(stage, rule, &[k], produced);
        }
    }

    pub fn props(&self) -> Vec<String> {
        let mut out = std::collections::BTreeSet::new();
        for it in &self.items {
            out.extend(it.head.props());
        }
        out.into_iter().collect()
    }
}

/// `{i0 ≤ φ, ψ ≤ ¬i1}` with empty contexts.
pub fn first_approximation(ineq: &Ineq, order_type: &OrderType) -> System {
    let g = goal();
    let items = vec![
        Item::new(Ineq::plain(g.lhs.clone(), ineq.lhs.clone()), Side::Right),
        Item::new(Ineq::plain(ineq.rhs.clone(), g.rhs.clone()), Side::Left),
    ];
    let mut sys = System::new(items, order_type.clone());
    let produced: Vec<String> = sys.items.iter().map(ToString::to_string).collect();
    sys.trace.push(DerivationStep::new(Stage::FirstApproximation, "first-approximation", vec![ineq.to_string()], produced));
    sys
}

pub fn reduce_outer(sys: &mut System, fresh: &mut FreshNominals) -> Result<(), StageError> {
    sys.rewrite_to_fixpoint(Stage::Outer, fresh, outer_step);
    check_outer_shapes(sys).map_err(|(item, reason)| StageError { stage: Stage::Outer, item, reason })
}

pub fn reduce_inner(sys: &mut System, fresh: &mut FreshNominals) -> Result<(), StageError> {
    sys.rewrite_to_fixpoint(Stage::Inner, fresh, inner_step);
    check_inner_shapes(sys).map_err(|(item, reason)| StageError { stage: Stage::Inner, item, reason })
}

pub fn pack(sys: &mut System) -> Result<(), StageError> {
    let mut k = 0;
    while k < sys.items.len() {
        let item = sys.items[k].clone();
        match pack_item(&item, &sys.order_type) {
            Ok(Some((rule, packed))) => sys.apply(Stage::Packing, rule, &[k], vec![packed]),
            Ok(None) => k += 1,
            Err(reason) => return Err(StageError { stage: Stage::Packing, item: item.to_string(), reason }),
        }
    }
    check_ackermann_ready(sys)
        .map_err(|e| StageError { stage: Stage::Packing, item: e.item, reason: e.reason })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Handedness {
    Right,
    Left,
}

impl Handedness {
    pub fn for_eps(e: Eps) -> Handedness {
        match e {
            Eps::One => Handedness::Right,
            Eps::Dual => Handedness::Left,
        }
    }
}

struct AckermannPlan {
    bounds: Vec<usize>,
    targets: Vec<usize>,
    witness: Formula,
}

fn plan_ackermann(items: &[Item], p: &str, hand: Handedness) -> Result<AckermannPlan, PreconditionError> {
    let mut bounds = Vec::new();
    let mut targets = Vec::new();
    let mut alphas = Vec::new();
    let fail = |item: &Item, reason: String| PreconditionError {
        variable: p.to_string(),
        item: item.to_string(),
        reason,
    };
    for (k, it) in items.iter().enumerate() {
        if !it.head.props().contains(p) {
            continue;
        }
        if !it.guards.is_empty() {
            return Err(fail(it, "item is still a guarded mega-inequality".into()));
        }
        let h = &it.head;
        let bound = match hand {
            Handedness::Right => matches!(&h.rhs, Formula::Prop(q) if q == p).then_some(&h.lhs),
            Handedness::Left => matches!(&h.lhs, Formula::Prop(q) if q == p).then_some(&h.rhs),
        };
        if let Some(alpha) = bound {
            if it.binders.is_empty() && h.has_empty_contexts() && is_plain_pure(alpha) {
                bounds.push(k);
                alphas.push(alpha.clone());
                continue;
            }
        }
        let (want_l, want_r, words) = match hand {
            Handedness::Right => (Polarity::Positive, Polarity::Negative, "positive on the left and negative on the right"),
            Handedness::Left => (Polarity::Negative, Polarity::Positive, "negative on the left and positive on the right"),
        };
        let ok = |pol: Polarity, want: Polarity| pol == want || pol == Polarity::Absent;
        if !ok(h.lhs.polarity(p), want_l) || !ok(h.rhs.polarity(p), want_r) {
            return Err(fail(it, format!("`{p}` must occur {words}")));
        }
        targets.push(k);
    }
    for &t in &targets {
        let item = &items[t];
        for a in &alphas {
            let names = a.all_nominals();
            if let Some(b) = item.binders.iter().find(|b| names.contains(*b)) {
                return Err(fail(item, format!("bound nominal `{b}` occurs in a bound for `{p}`")));
            }
        }
    }
    let witness = match hand {
        Handedness::Right => Formula::disj(alphas),
        Handedness::Left => Formula::conj(alphas),
    };
    Ok(AckermannPlan { bounds, targets, witness })
}

/// Eliminate `p` by substituting the join (right-handed) or meet
/// (left-handed) of its bounds into every other item mentioning it.
pub fn ackermann_eliminate(sys: &mut System, p: &str, hand: Handedness) -> Result<(), PreconditionError> {
    let plan = plan_ackermann(&sys.items, p, hand)?;
    if plan.bounds.is_empty() && plan.targets.is_empty() {
        return Ok(());
    }
    let produced: Vec<Item> = plan
        .targets
        .iter()
        .map(|&t| {
            let it = &sys.items[t];
            Item {
                head: it.head.map_sides(|f| f.substitute(p, &plan.witness)),
                ..it.clone()
            }
        })
        .collect();
    let mut consumed = plan.bounds.clone();
    consumed.extend(&plan.targets);
    let rule = match hand {
        Handedness::Right => "ackermann-right",
        Handedness::Left => "ackermann-left",
    };
    sys.apply(Stage::Ackermann, rule, &consumed, produced);
    Ok(())
}

pub fn eliminate_all(sys: &mut System) -> Result<(), PreconditionError> {
    for p in sys.props() {
        let hand = Handedness::for_eps(sys.order_type.get(&p));
        ackermann_eliminate(sys, &p, hand)?;
    }
    Ok(())
}

/// `& items ⇒ i0 ≤ ¬i1`.
pub fn output(sys: &mut System) -> QuasiUq {
    let q = QuasiUq {
        premises: sys.items.iter().map(Item::as_uq).collect(),
        conclusion: UqIneq::unquantified(sys.goal.clone()),
    };
    let consumed: Vec<String> = sys.items.iter().map(ToString::to_string).collect();
    sys.items.clear();
    sys.trace.push(DerivationStep::new(Stage::Output, "quasi-inequality", consumed, vec![q.to_string()]));
    q
}

fn side_sign(side: Side) -> Sign {
    match side {
        Side::Right => Sign::Plus,
        Side::Left | Side::Parked => Sign::Minus,
    }
}

fn has_critical_occurrence(f: &Formula, sign: Sign, eps: &OrderType) -> bool {
    build_signed_tree(f, sign)
        .branches()
        .iter()
        .any(|b| b.variable().is_some_and(|p| eps.is_critical(p, b.leaf.sign)))
}

/// Each preprocessed inequality is definite ε-Sahlqvist.
pub fn check_preprocessed(pre: &[Ineq], eps: &OrderType) -> Result<(), (String, String)> {
    for i in pre {
        let trees = [build_signed_tree(&i.lhs, Sign::Plus), build_signed_tree(&i.rhs, Sign::Minus)];
        if !is_epsilon_sahlqvist(&i.lhs, &i.rhs, eps) || !is_definite(&trees, eps) {
            return Err((i.to_string(), format!("not a definite Sahlqvist inequality for order-type {eps}")));
        }
    }
    Ok(())
}

/// After substage 1: pure, or `i ≤ α` with `+α` inner, or `β ≤ ¬i` with
/// `−β` inner.
pub fn check_outer_shapes(sys: &System) -> Result<(), (String, String)> {
    let eps = &sys.order_type;
    for it in &sys.items {
        if it.is_pure() {
            continue;
        }
        let h = &it.head;
        let ok = match it.side {
            Side::Right => {
                matches!(h.lhs, Formula::Nom(_))
                    && is_inner_sahlqvist(&[build_signed_tree(&h.rhs, Sign::Plus)], eps)
            }
            Side::Left => {
                matches!(&h.rhs, Formula::Not(x) if matches!(**x, Formula::Nom(_)))
                    && is_inner_sahlqvist(&[build_signed_tree(&h.lhs, Sign::Minus)], eps)
            }
            Side::Parked => false,
        };
        if !ok || !it.guards.is_empty() {
            return Err((it.to_string(), "outer part not fully decomposed".into()));
        }
    }
    Ok(())
}

/// After substage 2: every head is `α ≤ p` (ε(p)=1), `p ≤ β` (ε(p)=∂) or
/// has a working side with no critical occurrence, and the other side is
/// pure and free of contextual connectives.
pub fn check_inner_shapes(sys: &System) -> Result<(), (String, String)> {
    let eps = &sys.order_type;
    for it in &sys.items {
        let Some(w) = it.working() else { continue };
        let sign = side_sign(it.side);
        let head_ok = matches!(w, Formula::Prop(_)) || !has_critical_occurrence(w, sign, eps);
        if !head_ok {
            return Err((it.to_string(), "critical occurrence left inside a compound working side".into()));
        }
        if !is_plain_pure(it.other()) {
            return Err((it.to_string(), "other side is not pure and free of contextual connectives".into()));
        }
    }
    Ok(())
}

/// After substage 3: no guards remain and every variable satisfies the
/// side conditions of the Ackermann rule for its order-type direction.
pub fn check_ackermann_ready(sys: &System) -> Result<(), PreconditionError> {
    if let Some(it) = sys.items.iter().find(|it| !it.guards.is_empty()) {
        return Err(PreconditionError {
            variable: String::new(),
            item: it.to_string(),
            reason: "guarded mega-inequality survived packing".into(),
        });
    }
    for p in sys.props() {
        plan_ackermann(&sys.items, &p, Handedness::for_eps(sys.order_type.get(&p)))?;
    }
    Ok(())
}
