//! Single-item rewrite rules of the reduction stage. Every rule looks only at
//! the root of the item's working side.

use crate::sahlqvist::OrderType;
use crate::semantics::{Ineq, Mega};
use crate::syntax::{EdgeLabelSet, Formula, FreshNominals};

use super::item::{is_plain_pure, Guard, Item, Side};

fn nom(name: &str) -> Formula {
    Formula::Nom(name.to_string())
}

fn as_nominal(f: &Formula) -> Option<&str> {
    match f {
        Formula::Nom(i) => Some(i),
        _ => None,
    }
}

fn as_neg_nominal(f: &Formula) -> Option<&str> {
    match f {
        Formula::Not(a) => as_nominal(a),
        _ => None,
    }
}

fn ineq(lhs: Formula, rhs: Formula, sup: &EdgeLabelSet, sub: &EdgeLabelSet) -> Ineq {
    Ineq::new(lhs, rhs, sup.clone(), sub.clone())
}

/// A rule application: its name and the items replacing the input.
pub type Rewrite = (&'static str, Vec<Item>);

/// Substage 1: splitting, approximation for `◇ □ ⧫ ■ →`, and residuation
/// for `¬`, applied to unguarded items in nominal form.
pub fn outer_step(item: &Item, fresh: &mut FreshNominals) -> Option<Rewrite> {
    if !item.guards.is_empty() || !item.binders.is_empty() {
        return None;
    }
    let Ineq { lhs, rhs, sup: s, sub: s2 } = &item.head;
    match item.side {
        Side::Right => {
            if let Formula::And(a, b) = rhs {
                return Some((
                    "splitting",
                    vec![
                        Item::new(ineq(lhs.clone(), (**a).clone(), s, s2), Side::Right),
                        Item::new(ineq(lhs.clone(), (**b).clone(), s, s2), Side::Right),
                    ],
                ));
            }
            let i = as_nominal(lhs)?;
            match rhs {
                Formula::Dia(a) => {
                    let j = fresh.fresh();
                    Some((
                        "approximation-dia",
                        vec![
                            Item::new(ineq(nom(&j), (**a).clone(), s2, s2), Side::Right),
                            Item::new(ineq(nom(i), Formula::ldia(s2.clone(), nom(&j)), s, s2), Side::Right),
                        ],
                    ))
                }
                Formula::SDia(a) => {
                    let m0 = fresh.fresh();
                    let m1 = fresh.fresh();
                    Some((
                        "approximation-sdia",
                        vec![
                            Item::new(Mega::guard_ineq(&m0, &m1, s2), Side::Right),
                            Item::new(ineq(nom(i), (**a).clone(), s, &s2.with(&m0, &m1)), Side::Right),
                        ],
                    ))
                }
                Formula::Not(a) => Some((
                    "residuation-not",
                    vec![Item::new(ineq((**a).clone(), Formula::not(nom(i)), s2, s), Side::Left)],
                )),
                _ => None,
            }
        }
        Side::Left => {
            if let Formula::Or(a, b) = lhs {
                return Some((
                    "splitting",
                    vec![
                        Item::new(ineq((**a).clone(), rhs.clone(), s, s2), Side::Left),
                        Item::new(ineq((**b).clone(), rhs.clone(), s, s2), Side::Left),
                    ],
                ));
            }
            let i = as_neg_nominal(rhs)?;
            match lhs {
                Formula::Box(a) => {
                    let j = fresh.fresh();
                    Some((
                        "approximation-box",
                        vec![
                            Item::new(ineq((**a).clone(), Formula::not(nom(&j)), s, s), Side::Left),
                            Item::new(
                                ineq(Formula::lbox(s.clone(), Formula::not(nom(&j))), rhs.clone(), s, s2),
                                Side::Left,
                            ),
                        ],
                    ))
                }
                Formula::SBox(a) => {
                    let m0 = fresh.fresh();
                    let m1 = fresh.fresh();
                    Some((
                        "approximation-sbox",
                        vec![
                            Item::new(Mega::guard_ineq(&m0, &m1, s), Side::Left),
                            Item::new(ineq((**a).clone(), rhs.clone(), &s.with(&m0, &m1), s2), Side::Left),
                        ],
                    ))
                }
                Formula::Imp(a, b) => {
                    let j = fresh.fresh();
                    let k = fresh.fresh();
                    Some((
                        "approximation-imp",
                        vec![
                            Item::new(ineq(nom(&j), (**a).clone(), s, s), Side::Right),
                            Item::new(ineq((**b).clone(), Formula::not(nom(&k)), s, s), Side::Left),
                            Item::new(
                                ineq(Formula::imp(nom(&j), Formula::not(nom(&k))), rhs.clone(), s, s2),
                                Side::Left,
                            ),
                        ],
                    ))
                }
                Formula::Not(a) => Some((
                    "residuation-not",
                    vec![Item::new(ineq(nom(i), (**a).clone(), s2, s), Side::Right)],
                )),
                _ => None,
            }
        }
        Side::Parked => None,
    }
}

/// Substage 2: splitting (followed by second splitting under guards) and
/// residuation for `¬ ◇ □ ⧫ ■`.
pub fn inner_step(item: &Item, fresh: &mut FreshNominals) -> Option<Rewrite> {
    if !item.binders.is_empty() {
        return None;
    }
    let g = &item.guards;
    let split_name = if g.is_empty() { "splitting" } else { "splitting+second-splitting" };
    let Ineq { lhs, rhs, sup: s, sub: s2 } = &item.head;
    let same = |head: Ineq, side: Side| Item::guarded(g.clone(), head, side);
    let extended = |m0: &str, m1: &str, label: &EdgeLabelSet, head: Ineq, side: Side| {
        let mut gs = g.clone();
        gs.push(Guard { from: m0.to_string(), to: m1.to_string(), label: label.clone() });
        Item::guarded(gs, head, side)
    };
    match item.side {
        Side::Right => match rhs {
            Formula::And(a, b) => Some((
                split_name,
                vec![
                    same(ineq(lhs.clone(), (**a).clone(), s, s2), Side::Right),
                    same(ineq(lhs.clone(), (**b).clone(), s, s2), Side::Right),
                ],
            )),
            Formula::Not(b) => Some((
                "residuation-not",
                vec![same(ineq((**b).clone(), Formula::not(lhs.clone()), s2, s), Side::Left)],
            )),
            Formula::Box(b) => Some((
                "residuation-box",
                vec![same(ineq(Formula::inv_ldia(s2.clone(), lhs.clone()), (**b).clone(), s, s2), Side::Right)],
            )),
            Formula::SBox(b) => {
                let m0 = fresh.fresh();
                let m1 = fresh.fresh();
                Some((
                    "residuation-sbox",
                    vec![extended(&m0, &m1, s2, ineq(lhs.clone(), (**b).clone(), s, &s2.with(&m0, &m1)), Side::Right)],
                ))
            }
            _ => None,
        },
        Side::Left => match lhs {
            Formula::Or(a, b) => Some((
                split_name,
                vec![
                    same(ineq((**a).clone(), rhs.clone(), s, s2), Side::Left),
                    same(ineq((**b).clone(), rhs.clone(), s, s2), Side::Left),
                ],
            )),
            Formula::Not(a) => Some((
                "residuation-not",
                vec![same(ineq(Formula::not(rhs.clone()), (**a).clone(), s2, s), Side::Right)],
            )),
            Formula::Dia(a) => Some((
                "residuation-dia",
                vec![same(ineq((**a).clone(), Formula::inv_lbox(s.clone(), rhs.clone()), s, s2), Side::Left)],
            )),
            Formula::SDia(a) => {
                let m0 = fresh.fresh();
                let m1 = fresh.fresh();
                Some((
                    "residuation-sdia",
                    vec![extended(&m0, &m1, s, ineq((**a).clone(), rhs.clone(), &s.with(&m0, &m1), s2), Side::Left)],
                ))
            }
            _ => None,
        },
        Side::Parked => None,
    }
}

/// Second splitting on a mega-inequality: a guard over a conjunction becomes
/// the conjunction of guarded parts.
pub fn second_splitting(m: &Mega) -> Option<Vec<Mega>> {
    match m {
        Mega::Guarded { from, to, label, body } => {
            if let Mega::Conj(a, b) = &**body {
                return Some(vec![
                    Mega::guarded(from, to, label.clone(), (**a).clone()),
                    Mega::guarded(from, to, label.clone(), (**b).clone()),
                ]);
            }
            let inner = second_splitting(body)?;
            Some(inner.into_iter().map(|b| Mega::guarded(from, to, label.clone(), b)).collect())
        }
        _ => None,
    }
}

/// Substage 3 on one item. `Ok(None)` means the item is already in final
/// shape; `Err` carries a reason when a side condition fails.
pub fn pack_item(item: &Item, eps: &OrderType) -> Result<Option<(&'static str, Item)>, String> {
    let head = &item.head;
    if item.guards.is_empty() {
        if head.lhs.is_context_free() && head.rhs.is_context_free() && !head.has_empty_contexts() {
            let erased = Ineq::plain(head.lhs.clone(), head.rhs.clone());
            return Ok(Some(("context-erasure", Item { head: erased, ..item.clone() })));
        }
        return Ok(None);
    }
    if !is_plain_pure(item.other()) {
        return Err(format!(
            "the side opposite the working side of `{item}` is not pure and free of contextual connectives"
        ));
    }
    let binders: Vec<String> =
        item.guards.iter().flat_map(|g| [g.from.clone(), g.to.clone()]).collect();
    let globals = || item.guards.iter().map(Guard::as_global);
    let context_for = |body: &Formula, ctx: &EdgeLabelSet| {
        if body.is_context_free() {
            EdgeLabelSet::new()
        } else {
            ctx.clone()
        }
    };
    let quantify = |f: Formula, exists: bool| {
        binders.iter().rev().fold(f, |acc, b| {
            if exists {
                Formula::exists_nom(b, acc)
            } else {
                Formula::forall_nom(b, acc)
            }
        })
    };
    match (item.side, &head.lhs, &head.rhs) {
        (Side::Right, alpha, Formula::Prop(p)) if eps.get(p) == crate::sahlqvist::Eps::One => {
            let packed = quantify(Formula::conj(globals().chain([alpha.clone()])), true);
            Ok(Some(("packing-1", Item::new(Ineq::plain(packed, head.rhs.clone()), Side::Parked))))
        }
        (Side::Left, Formula::Prop(p), beta) if eps.get(p) == crate::sahlqvist::Eps::Dual => {
            let packed = quantify(Formula::imp(Formula::conj(globals()), beta.clone()), false);
            Ok(Some(("packing-2", Item::new(Ineq::plain(head.lhs.clone(), packed), Side::Parked))))
        }
        (Side::Left, gamma, alpha) => {
            let body = Formula::imp(Formula::conj(globals().chain([gamma.clone()])), alpha.clone());
            let ctx = context_for(&body, &head.sup);
            Ok(Some(("packing-4", Item::quantified(binders, Ineq::new(Formula::Top, body, EdgeLabelSet::new(), ctx)))))
        }
        (_, alpha, gamma) => {
            let body = Formula::imp(Formula::conj(globals().chain([alpha.clone()])), gamma.clone());
            let ctx = context_for(&body, &head.sub);
            Ok(Some(("packing-3", Item::quantified(binders, Ineq::new(Formula::Top, body, EdgeLabelSet::new(), ctx)))))
        }
    }
}
