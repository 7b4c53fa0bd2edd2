use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use sml_corr::sahlqvist::{Eps, OrderType, Sign};
use sml_corr::semantics::{Ineq, KripkeFrame, Mega, QuasiUq, Statement, UqIneq, Valuation};
use sml_corr::syntax::{nom, prop, EdgeLabelSet, Formula};

pub const VARS: [&str; 3] = ["p", "q", "r"];

/// Any base-language formula over `vars`, including the sabotage modalities.
pub fn base_formula(rng: &mut StdRng, depth: usize, vars: &[&str]) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..6) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => prop(vars.choose(rng).unwrap()),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..10) {
        0 => Formula::not(base_formula(rng, d, vars)),
        1 => Formula::and(base_formula(rng, d, vars), base_formula(rng, d, vars)),
        2 => Formula::or(base_formula(rng, d, vars), base_formula(rng, d, vars)),
        3 => Formula::imp(base_formula(rng, d, vars), base_formula(rng, d, vars)),
        4 => Formula::boxed(base_formula(rng, d, vars)),
        5 => Formula::dia(base_formula(rng, d, vars)),
        6 => Formula::sbox(base_formula(rng, d, vars)),
        7 => Formula::sdia(base_formula(rng, d, vars)),
        8 => Formula::iff(base_formula(rng, d, vars), base_formula(rng, d, vars)),
        _ => Formula::not(base_formula(rng, d, vars)),
    }
}

pub fn random_frame(rng: &mut StdRng, max_n: usize) -> KripkeFrame {
    let n = rng.gen_range(1..=max_n);
    let bits: u64 = rng.gen::<u64>() & ((1u64 << (n * n)) - 1);
    KripkeFrame::from_bits(n, bits).unwrap()
}

pub fn random_valuation(rng: &mut StdRng, n: usize, props: &[&str], noms: &[&str]) -> Valuation {
    let mut v = Valuation::new();
    for p in props {
        v.set_prop(p, rng.gen::<u64>() & ((1u64 << n) - 1));
    }
    for i in noms {
        v.set_nom(i, rng.gen_range(0..n));
    }
    v
}

/// A random order-type over [`VARS`].
pub fn random_order_type(rng: &mut StdRng) -> OrderType {
    VARS.iter().fold(OrderType::default(), |acc, p| {
        acc.with(p, if rng.gen_bool(0.5) { Eps::One } else { Eps::Dual })
    })
}

fn critical_sign(e: Eps) -> Sign {
    match e {
        Eps::One => Sign::Plus,
        Eps::Dual => Sign::Minus,
    }
}

/// A leaf: a constant, or a variable whose occurrence at `sign` is critical
/// only if `allow_critical`.
fn leaf(rng: &mut StdRng, eps: &OrderType, sign: Sign, allow_critical: bool) -> Formula {
    let options: Vec<&str> = VARS
        .iter()
        .copied()
        .filter(|p| allow_critical || critical_sign(eps.get(p)) != sign)
        .collect();
    if options.is_empty() || rng.gen_bool(0.15) {
        return if rng.gen_bool(0.5) { Formula::Top } else { Formula::Bot };
    }
    prop(options.choose(rng).unwrap())
}

/// A subtree all of whose critical branches consist of inner nodes only.
fn inner(rng: &mut StdRng, eps: &OrderType, sign: Sign, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf(rng, eps, sign, true);
    }
    let d = depth - 1;
    match (sign, rng.gen_range(0..4)) {
        (_, 0) => Formula::not(inner(rng, eps, sign.flip(), d)),
        (Sign::Plus, 1) => Formula::and(inner(rng, eps, sign, d), inner(rng, eps, sign, d)),
        (Sign::Plus, 2) => Formula::boxed(inner(rng, eps, sign, d)),
        (Sign::Plus, _) => Formula::sbox(inner(rng, eps, sign, d)),
        (Sign::Minus, 1) => Formula::or(inner(rng, eps, sign, d), inner(rng, eps, sign, d)),
        (Sign::Minus, 2) => Formula::dia(inner(rng, eps, sign, d)),
        (Sign::Minus, _) => Formula::sdia(inner(rng, eps, sign, d)),
    }
}

/// A subtree whose critical branches are outer nodes above an inner part.
fn outer(rng: &mut StdRng, eps: &OrderType, sign: Sign, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return inner(rng, eps, sign, depth.min(2));
    }
    let d = depth - 1;
    let pick = rng.gen_range(0..5);
    match (sign, pick) {
        (_, 0) => Formula::not(outer(rng, eps, sign.flip(), d)),
        (Sign::Plus, 1) => Formula::or(outer(rng, eps, sign, d), outer(rng, eps, sign, d)),
        (Sign::Plus, 2) => Formula::dia(outer(rng, eps, sign, d)),
        (Sign::Plus, 3) => Formula::sdia(outer(rng, eps, sign, d)),
        (Sign::Plus, _) => Formula::and(outer(rng, eps, sign, d), outer(rng, eps, sign, d)),
        (Sign::Minus, 1) => Formula::and(outer(rng, eps, sign, d), outer(rng, eps, sign, d)),
        (Sign::Minus, 2) => Formula::boxed(outer(rng, eps, sign, d)),
        (Sign::Minus, 3) => Formula::sbox(outer(rng, eps, sign, d)),
        (Sign::Minus, _) => {
            if rng.gen_bool(0.5) {
                Formula::imp(outer(rng, eps, Sign::Plus, d), outer(rng, eps, Sign::Minus, d))
            } else {
                Formula::or(outer(rng, eps, sign, d), outer(rng, eps, sign, d))
            }
        }
    }
}

/// An ε-Sahlqvist inequality built branch-by-branch: inner nodes near the
/// leaves, outer nodes above them.
pub fn sahlqvist_ineq(rng: &mut StdRng, depth: usize) -> (OrderType, Ineq) {
    let eps = random_order_type(rng);
    let lhs = outer(rng, &eps, Sign::Plus, depth);
    let rhs = outer(rng, &eps, Sign::Minus, depth);
    (eps, Ineq::plain(lhs, rhs))
}

pub const NOMS: [&str; 3] = ["i2", "i3", "i4"];
pub const BINDERS: [&str; 2] = ["i5", "i6"];

fn any_nominal(rng: &mut StdRng) -> &'static str {
    if rng.gen_bool(0.7) {
        NOMS.choose(rng).unwrap()
    } else {
        BINDERS.choose(rng).unwrap()
    }
}

pub fn label_set(rng: &mut StdRng) -> EdgeLabelSet {
    let mut s = EdgeLabelSet::new();
    for _ in 0..rng.gen_range(0..3) {
        s.insert(any_nominal(rng), any_nominal(rng));
    }
    s
}

/// A formula of the expanded language: nominals, labelled and inverse
/// labelled modalities, global modalities and nominal quantifiers.
pub fn expanded_formula(rng: &mut StdRng, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..6) {
            0 => Formula::Top,
            1 => Formula::Bot,
            2 | 3 => nom(any_nominal(rng)),
            _ => prop(VARS[..2].choose(rng).unwrap()),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..16) {
        0 => Formula::not(expanded_formula(rng, d)),
        1 => Formula::and(expanded_formula(rng, d), expanded_formula(rng, d)),
        2 => Formula::or(expanded_formula(rng, d), expanded_formula(rng, d)),
        3 => Formula::imp(expanded_formula(rng, d), expanded_formula(rng, d)),
        4 => Formula::boxed(expanded_formula(rng, d)),
        5 => Formula::dia(expanded_formula(rng, d)),
        6 => Formula::sbox(expanded_formula(rng, d)),
        7 => Formula::sdia(expanded_formula(rng, d)),
        8 => Formula::lbox(label_set(rng), expanded_formula(rng, d)),
        9 => Formula::ldia(label_set(rng), expanded_formula(rng, d)),
        10 => Formula::inv_lbox(label_set(rng), expanded_formula(rng, d)),
        11 => Formula::inv_ldia(label_set(rng), expanded_formula(rng, d)),
        12 => Formula::gbox(expanded_formula(rng, d)),
        13 => Formula::gdia(expanded_formula(rng, d)),
        14 => Formula::forall_nom(BINDERS.choose(rng).unwrap(), expanded_formula(rng, d)),
        _ => Formula::exists_nom(BINDERS.choose(rng).unwrap(), expanded_formula(rng, d)),
    }
}

pub fn expanded_ineq(rng: &mut StdRng, depth: usize) -> Ineq {
    Ineq::new(expanded_formula(rng, depth), expanded_formula(rng, depth), label_set(rng), label_set(rng))
}

fn binders(rng: &mut StdRng) -> Vec<String> {
    BINDERS.iter().filter(|_| rng.gen_bool(0.5)).map(|s| s.to_string()).collect()
}

fn mega(rng: &mut StdRng, depth: usize) -> Mega {
    if depth == 0 || rng.gen_bool(0.3) {
        return Mega::Leaf(expanded_ineq(rng, 2));
    }
    if rng.gen_bool(0.5) {
        Mega::conj(mega(rng, depth - 1), mega(rng, depth - 1))
    } else {
        let mut pair = BINDERS.to_vec();
        pair.shuffle(rng);
        Mega::Guarded {
            from: pair[0].to_string(),
            to: pair[1].to_string(),
            label: label_set(rng),
            body: Box::new(mega(rng, depth - 1)),
        }
    }
}

/// Any kind of statement, with nominals from [`NOMS`] and [`BINDERS`].
pub fn statement(rng: &mut StdRng) -> Statement {
    match rng.gen_range(0..4) {
        0 => Statement::Ineq(expanded_ineq(rng, 3)),
        1 => Statement::Mega(mega(rng, 3)),
        2 => Statement::UqIneq(UqIneq::new(binders(rng), expanded_ineq(rng, 3))),
        _ => {
            let premises = (0..rng.gen_range(0..3)).map(|_| UqIneq::new(binders(rng), expanded_ineq(rng, 2))).collect();
            let conclusion = UqIneq::new(binders(rng), expanded_ineq(rng, 2));
            Statement::QuasiUq(QuasiUq { premises, conclusion })
        }
    }
}
