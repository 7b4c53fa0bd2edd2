//! Stage 1: distribution towards the root, splitting, and monotone /
//! antitone variable elimination.

use crate::sahlqvist::{classify_node, Connective, Sign};
use crate::semantics::Ineq;
use crate::syntax::Formula;

use super::{DerivationStep, Stage};

fn is_outer(f: &Formula, sign: Sign) -> bool {
    classify_node(&Connective::of(f), sign).is_outer
}

/// One distribution step at `f` itself, if `f` is one of the ten pushing
/// connectives sitting directly above an outer `+∨` or `−∧`.
fn distribute_here(f: &Formula, sign: Sign) -> Option<Formula> {
    use Formula::*;
    let or_parts = |x: &Formula| match x {
        Or(a, b) => Some(((**a).clone(), (**b).clone())),
        _ => None,
    };
    let and_parts = |x: &Formula| match x {
        And(a, b) => Some(((**a).clone(), (**b).clone())),
        _ => None,
    };
    match (sign, f) {
        (Sign::Plus, Dia(x)) => or_parts(x).map(|(a, b)| Formula::or(Formula::dia(a), Formula::dia(b))),
        (Sign::Plus, SDia(x)) => or_parts(x).map(|(a, b)| Formula::or(Formula::sdia(a), Formula::sdia(b))),
        (Sign::Minus, Not(x)) => or_parts(x).map(|(a, b)| Formula::and(Formula::not(a), Formula::not(b))),
        (Sign::Plus, And(x, y)) => or_parts(x)
            .map(|(a, b)| Formula::or(Formula::and(a, (**y).clone()), Formula::and(b, (**y).clone())))
            .or_else(|| {
                or_parts(y).map(|(a, b)| Formula::or(Formula::and((**x).clone(), a), Formula::and((**x).clone(), b)))
            }),
        (Sign::Minus, Imp(x, y)) => or_parts(x)
            .map(|(a, b)| Formula::and(Formula::imp(a, (**y).clone()), Formula::imp(b, (**y).clone())))
            .or_else(|| {
                and_parts(y).map(|(a, b)| Formula::and(Formula::imp((**x).clone(), a), Formula::imp((**x).clone(), b)))
            }),
        (Sign::Minus, Box(x)) => and_parts(x).map(|(a, b)| Formula::and(Formula::boxed(a), Formula::boxed(b))),
        (Sign::Minus, SBox(x)) => and_parts(x).map(|(a, b)| Formula::and(Formula::sbox(a), Formula::sbox(b))),
        (Sign::Plus, Not(x)) => and_parts(x).map(|(a, b)| Formula::or(Formula::not(a), Formula::not(b))),
        (Sign::Minus, Or(x, y)) => and_parts(x)
            .map(|(a, b)| Formula::and(Formula::or(a, (**y).clone()), Formula::or(b, (**y).clone())))
            .or_else(|| {
                and_parts(y).map(|(a, b)| Formula::and(Formula::or((**x).clone(), a), Formula::or((**x).clone(), b)))
            }),
        _ => None,
    }
}

/// First distribution step in pre-order, descending only through outer
/// nodes.
pub fn distribute_once(f: &Formula, sign: Sign) -> Option<Formula> {
    if !is_outer(f, sign) {
        return None;
    }
    if let Some(g) = distribute_here(f, sign) {
        return Some(g);
    }
    let child_signs: Vec<Sign> = match f {
        Formula::Not(_) => vec![sign.flip()],
        Formula::Imp(..) => vec![sign.flip(), sign],
        _ => f.children().iter().map(|_| sign).collect(),
    };
    let children = f.children();
    for (k, (c, s)) in children.iter().zip(child_signs).enumerate() {
        if let Some(new_child) = distribute_once(c, s) {
            let mut idx = 0;
            return Some(f.map_children(|orig| {
                let out = if idx == k { new_child.clone() } else { orig.clone() };
                idx += 1;
                out
            }));
        }
    }
    None
}

/// Occurrence signs of `p` in `+lhs` and `−rhs`: (any positive, any negative).
fn occurrence_signs(ineq: &Ineq, p: &str) -> (bool, bool) {
    fn walk(f: &Formula, sign: Sign, p: &str, acc: &mut (bool, bool)) {
        match f {
            Formula::Prop(q) if q == p => match sign {
                Sign::Plus => acc.0 = true,
                Sign::Minus => acc.1 = true,
            },
            Formula::Not(a) => walk(a, sign.flip(), p, acc),
            Formula::Imp(a, b) => {
                walk(a, sign.flip(), p, acc);
                walk(b, sign, p, acc);
            }
            Formula::Iff(a, b) => {
                for s in [Sign::Plus, Sign::Minus] {
                    walk(a, s, p, acc);
                    walk(b, s, p, acc);
                }
            }
            _ => {
                for c in f.children() {
                    walk(c, sign, p, acc);
                }
            }
        }
    }
    let mut acc = (false, false);
    walk(&ineq.lhs, Sign::Plus, p, &mut acc);
    walk(&ineq.rhs, Sign::Minus, p, &mut acc);
    acc
}

/// One elimination step: the first variable (by name) that occurs on both
/// sides and all of whose signed occurrences agree is replaced by `⊥` (all negative) or `⊤` (all
/// positive), followed by constant folding.
pub fn eliminate_once(ineq: &Ineq) -> Option<(String, Ineq)> {
    let (left, right) = (ineq.lhs.props(), ineq.rhs.props());
    for p in left.intersection(&right) {
        let by = match occurrence_signs(ineq, p) {
            (false, true) => Formula::Bot,
            (true, false) => Formula::Top,
            _ => continue,
        };
        let out = ineq.map_sides(|f| f.substitute(p, &by).fold_constants());
        return Some((p.clone(), out));
    }
    None
}

/// Split at the root: `α ∨ β ≤ γ` and `α ≤ β ∧ γ`.
pub fn split_once(ineq: &Ineq) -> Option<Vec<Ineq>> {
    if let Formula::Or(a, b) = &ineq.lhs {
        return Some(vec![
            Ineq::plain((**a).clone(), ineq.rhs.clone()),
            Ineq::plain((**b).clone(), ineq.rhs.clone()),
        ]);
    }
    if let Formula::And(a, b) = &ineq.rhs {
        return Some(vec![
            Ineq::plain(ineq.lhs.clone(), (**a).clone()),
            Ineq::plain(ineq.lhs.clone(), (**b).clone()),
        ]);
    }
    None
}

/// One Stage-1 rewrite of a single inequality: splitting, then distribution,
/// then variable elimination.
pub fn preprocess_step(ineq: &Ineq) -> Option<(&'static str, Vec<Ineq>)> {
    if let Some(parts) = split_once(ineq) {
        return Some(("splitting", parts));
    }
    if let Some(l) = distribute_once(&ineq.lhs, Sign::Plus) {
        return Some(("distribution", vec![Ineq::plain(l, ineq.rhs.clone())]));
    }
    if let Some(r) = distribute_once(&ineq.rhs, Sign::Minus) {
        return Some(("distribution", vec![Ineq::plain(ineq.lhs.clone(), r)]));
    }
    if let Some((_, out)) = eliminate_once(ineq) {
        return Some(("variable-elimination", vec![out]));
    }
    None
}

/// Exhaustive Stage 1 with every rewrite recorded. The work list is a queue:
/// the rewritten inequality is removed and its products appended, skipping
/// duplicates.
pub fn preprocess_traced(ineq: &Ineq, trace: &mut Vec<DerivationStep>) -> Vec<Ineq> {
    let start = Ineq::plain(ineq.lhs.eliminate_iff(), ineq.rhs.eliminate_iff());
    if start != *ineq {
        trace.push(DerivationStep::new(Stage::Preprocess, "iff-elimination", vec![ineq.to_string()], vec![start.to_string()]));
    }
    let mut items = vec![start];
    loop {
        let Some((k, rule, produced)) =
            items.iter().enumerate().find_map(|(k, it)| preprocess_step(it).map(|(r, p)| (k, r, p)))
        else {
            return items;
        };
        let consumed = items.remove(k);
        let mut shown = Vec::new();
        for p in produced {
            shown.push(p.to_string());
            if !items.contains(&p) {
                items.push(p);
            }
        }
        trace.push(DerivationStep::new(Stage::Preprocess, rule, vec![consumed.to_string()], shown));
    }
}

pub fn preprocess(ineq: &Ineq) -> Vec<Ineq> {
    preprocess_traced(ineq, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_inequality;

    fn pre(text: &str) -> Vec<String> {
        let (l, r) = parse_inequality(text).unwrap();
        preprocess(&Ineq::plain(l, r)).iter().map(ToString::to_string).collect()
    }

    #[test]
    fn diamond_over_disjunction() {
        assert_eq!(pre("<>(p | q) <= r"), vec!["<>p <= r", "<>q <= r"]);
    }

    #[test]
    fn antitone_variable() {
        assert_eq!(pre("~p <= p"), vec!["top <= bot"]);
    }

    #[test]
    fn nothing_to_do() {
        assert_eq!(pre("[]p <= p"), vec!["[]p <= p"]);
    }

    #[test]
    fn distribution_stops_below_inner_nodes() {
        assert_eq!(pre("[](p | q) <= <>p"), vec!["[](p | q) <= <>p"]);
        assert_eq!(pre("[](p | q) <= p & q"), vec!["[](p | q) <= p", "[](p | q) <= q"]);
        assert_eq!(pre("[]p <= ~p"), vec!["[]top <= bot"]);
    }

    #[test]
    fn implication_consequent_over_conjunction() {
        assert_eq!(pre("p <= q -> (<>p & <>q)"), vec!["p <= q -> <>p", "p <= q -> <>q"]);
    }
}
