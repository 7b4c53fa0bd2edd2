//! Concrete rule applications, produced by the library's own rule functions
//! on scripted inputs, each paired with the correspondence it must satisfy.

use std::collections::BTreeSet;

use sml_corr::alba::{
    ackermann_eliminate, first_approximation, goal, inner_step, outer_step, pack_item, preprocess_step, Guard,
    Handedness, Item, Side, System,
};
use sml_corr::sahlqvist::{Eps, OrderType};
use sml_corr::semantics::{Ineq, Statement};
use sml_corr::syntax::{nom, parse_formula, parse_inequality, prop, EdgeLabelSet, Formula, FreshNominals};

use super::soundness::Mode;

#[derive(Clone, Debug)]
pub struct RuleInstance {
    pub rule: String,
    pub premises: Vec<Statement>,
    pub conclusions: Vec<Statement>,
    pub mode: Mode,
}

impl RuleInstance {
    pub fn describe(&self) -> String {
        let show = |v: &[Statement]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ; ");
        format!("{}: {} ==> {}", self.rule, show(&self.premises), show(&self.conclusions))
    }
}

fn f(text: &str) -> Formula {
    parse_formula(text).unwrap()
}

fn not_i(i: &str) -> Formula {
    Formula::not(nom(i))
}

fn labels() -> Vec<EdgeLabelSet> {
    vec![
        EdgeLabelSet::new(),
        EdgeLabelSet::singleton("i7", "i8"),
        EdgeLabelSet::singleton("i8", "i7").with("i7", "i7"),
    ]
}

fn fresh_gen() -> FreshNominals {
    let mut g = FreshNominals::starting_at(2);
    g.reserve(["i0", "i1", "i7", "i8"]);
    g
}

fn new_nominals(before: &[Statement], after: &[Statement]) -> Vec<String> {
    let old: BTreeSet<String> = before.iter().flat_map(|s| s.all_nominals()).collect();
    let new: BTreeSet<String> = after.iter().flat_map(|s| s.free_nominals()).collect();
    new.difference(&old).cloned().collect()
}

fn reduction_instance(rule: &str, item: &Item, produced: &[Item]) -> RuleInstance {
    let premises = vec![item.statement()];
    let conclusions: Vec<Statement> = produced.iter().map(Item::statement).collect();
    let mode = if rule.starts_with("approximation") {
        Mode::ExistsFresh(new_nominals(&premises, &conclusions))
    } else {
        Mode::Equivalent
    };
    RuleInstance { rule: rule.to_string(), premises, conclusions, mode }
}

/// Right-hand items `i0 ≤ φ` and left-hand items `ψ ≤ ¬i1` for substages 1
/// and 2, each under several context pairs.
fn reduction_seeds() -> Vec<Item> {
    let right = ["<>p", "<!>p", "<>(p & q)", "~p", "[]p", "[!]p", "p & []q", "[]~p", "~<>p", "<!>[]p"];
    let left = ["[]p", "[!]p", "p -> <>q", "~p", "<>p", "<!>p", "p | <>q", "<>~p", "~[]p", "[]<!>p", "[!]top"];
    let mut out = Vec::new();
    for s in labels() {
        for s2 in labels() {
            for r in right {
                out.push(Item::new(Ineq::new(nom("i0"), f(r), s.clone(), s2.clone()), Side::Right));
            }
            for l in left {
                out.push(Item::new(Ineq::new(f(l), not_i("i1"), s.clone(), s2.clone()), Side::Left));
            }
        }
    }
    out
}

fn guarded_seeds() -> Vec<Item> {
    let g = vec![Guard { from: "i5".into(), to: "i6".into(), label: EdgeLabelSet::singleton("i7", "i8") }];
    let under = EdgeLabelSet::singleton("i5", "i6");
    vec![
        Item::guarded(g.clone(), Ineq::new(nom("i0"), f("p & []q"), EdgeLabelSet::new(), under.clone()), Side::Right),
        Item::guarded(g.clone(), Ineq::new(f("p | <>q"), not_i("i1"), under.clone(), EdgeLabelSet::new()), Side::Left),
        Item::guarded(g.clone(), Ineq::new(f("<!>p"), not_i("i1"), under.clone(), EdgeLabelSet::new()), Side::Left),
        Item::guarded(g, Ineq::new(nom("i0"), f("[!]p"), EdgeLabelSet::new(), under), Side::Right),
    ]
}

/// Every substage-1 and substage-2 rule that fires on the seeds.
pub fn reduction_instances() -> Vec<RuleInstance> {
    let mut out = Vec::new();
    for item in reduction_seeds().iter().chain(guarded_seeds().iter()) {
        let mut fresh = fresh_gen();
        if let Some((rule, produced)) = outer_step(item, &mut fresh) {
            out.push(reduction_instance(rule, item, &produced));
        }
        let mut fresh = fresh_gen();
        if let Some((rule, produced)) = inner_step(item, &mut fresh) {
            out.push(reduction_instance(rule, item, &produced));
        }
    }
    out
}

pub fn packing_instances() -> Vec<RuleInstance> {
    let eps = OrderType::default().with("p", Eps::One).with("q", Eps::Dual);
    let g = |a: &str, b: &str, label: EdgeLabelSet| Guard { from: a.into(), to: b.into(), label };
    let one = vec![g("i5", "i6", EdgeLabelSet::new())];
    let two = vec![g("i5", "i6", EdgeLabelSet::singleton("i7", "i8")), g("i9", "i10", EdgeLabelSet::singleton("i5", "i6"))];
    let ctx = EdgeLabelSet::singleton("i5", "i6");
    let items = vec![
        Item::guarded(one.clone(), Ineq::new(nom("i2"), prop("p"), EdgeLabelSet::new(), ctx.clone()), Side::Right),
        Item::guarded(two.clone(), Ineq::new(nom("i3"), prop("p"), ctx.clone(), ctx.clone()), Side::Right),
        Item::guarded(one.clone(), Ineq::new(prop("q"), not_i("i1"), ctx.clone(), EdgeLabelSet::new()), Side::Left),
        Item::guarded(two.clone(), Ineq::new(prop("q"), Formula::and(not_i("i1"), not_i("i7")), ctx.clone(), ctx.clone()), Side::Left),
        Item::guarded(one.clone(), Ineq::new(f("top"), not_i("i1"), ctx.clone(), EdgeLabelSet::new()), Side::Left),
        Item::guarded(one.clone(), Ineq::new(f("[]p"), not_i("i1"), ctx.clone(), EdgeLabelSet::new()), Side::Left),
        Item::guarded(two.clone(), Ineq::new(nom("i2"), f("<!>q"), EdgeLabelSet::new(), ctx.clone()), Side::Right),
        Item::guarded(one, Ineq::new(nom("i0"), f("~q"), EdgeLabelSet::new(), ctx.clone()), Side::Right),
        Item::new(Ineq::new(nom("i2"), prop("p"), ctx.clone(), EdgeLabelSet::singleton("i7", "i8")), Side::Right),
        Item::new(Ineq::new(prop("q"), Formula::inv_lbox(ctx.clone(), not_i("i1")), ctx, EdgeLabelSet::new()), Side::Left),
    ];
    items
        .iter()
        .filter_map(|item| {
            let (rule, packed) = pack_item(item, &eps).unwrap_or_else(|e| panic!("{e}"))?;
            Some(RuleInstance {
                rule: rule.to_string(),
                premises: vec![item.statement()],
                conclusions: vec![packed.statement()],
                mode: Mode::Equivalent,
            })
        })
        .collect()
}

pub fn ackermann_instances() -> Vec<RuleInstance> {
    let plain = |l: Formula, r: Formula| Item::new(Ineq::plain(l, r), Side::Parked);
    let quantified =
        |b: &[&str], r: Formula| Item::quantified(b.iter().map(|s| s.to_string()).collect(), Ineq::plain(Formula::Top, r));
    let e = EdgeLabelSet::new;
    let cases: Vec<(Vec<Item>, Handedness)> = vec![
        (vec![plain(nom("i2"), prop("p")), plain(prop("p"), not_i("i1"))], Handedness::Right),
        (
            vec![
                plain(nom("i2"), prop("p")),
                plain(Formula::inv_ldia(e(), nom("i0")), prop("p")),
                plain(f("<>p"), not_i("i1")),
            ],
            Handedness::Right,
        ),
        (vec![plain(Formula::and(f("<>p"), nom("i0")), not_i("i1"))], Handedness::Right),
        (vec![plain(prop("p"), Formula::inv_lbox(e(), not_i("i1"))), plain(nom("i0"), prop("p"))], Handedness::Left),
        (
            vec![
                plain(prop("p"), not_i("i1")),
                plain(prop("p"), not_i("i2")),
                quantified(&["i5"], Formula::imp(nom("i5"), f("<>p"))),
            ],
            Handedness::Left,
        ),
        (
            vec![
                plain(nom("i2"), prop("p")),
                quantified(
                    &["i5", "i6"],
                    Formula::imp(
                        Formula::and(Formula::gbox(Formula::imp(nom("i5"), Formula::ldia(e(), nom("i6")))), prop("p")),
                        not_i("i1"),
                    ),
                ),
            ],
            Handedness::Right,
        ),
    ];
    let mut out = Vec::new();
    for (items, hand) in cases {
        let premises: Vec<Statement> = items.iter().map(Item::statement).collect();
        let mut sys = System::new(items, OrderType::default());
        ackermann_eliminate(&mut sys, "p", hand).expect("Ackermann side conditions hold");
        let conclusions = sys.items.iter().map(Item::statement).collect();
        let rule = sys.trace.last().map(|s| s.rule.clone()).unwrap_or_else(|| "ackermann".into());
        out.push(RuleInstance { rule, premises, conclusions, mode: Mode::ExistsProp("p".into()) });
    }
    out
}

/// Stage 1 rewrites and the first approximation.
pub fn stage_one_instances() -> Vec<RuleInstance> {
    let inputs = [
        "<>(p | q) <= r",
        "<!>(p | q) <= <>p",
        "p & (q | r) <= <>p",
        "~(p & q) <= []p",
        "p <= [](q & r)",
        "p <= [!](q & <>p)",
        "p <= (q | r) -> <>p",
        "p <= q -> (r & <>p)",
        "p <= ~(q | <>p)",
        "p <= (q & r) | []p",
        "~p <= p",
        "[]p <= ~p",
        "p | q <= <>p",
        "p <= q & <>p",
        "<>p & q <= p",
    ];
    let mut out = Vec::new();
    for text in inputs {
        let (l, r) = parse_inequality(text).unwrap();
        let ineq = Ineq::plain(l, r);
        if let Some((rule, produced)) = preprocess_step(&ineq) {
            let mode = if rule == "variable-elimination" { Mode::ForallProp } else { Mode::Equivalent };
            out.push(RuleInstance {
                rule: rule.to_string(),
                premises: vec![Statement::Ineq(ineq.clone())],
                conclusions: produced.into_iter().map(Statement::Ineq).collect(),
                mode,
            });
        }
        let sys = first_approximation(&ineq, &OrderType::default());
        out.push(RuleInstance {
            rule: "first-approximation".into(),
            premises: vec![Statement::Ineq(ineq)],
            conclusions: sys.items.iter().map(Item::statement).collect(),
            mode: Mode::FirstApproximation(Statement::Ineq(goal())),
        });
    }
    out
}

pub fn all_instances() -> Vec<RuleInstance> {
    let mut out = stage_one_instances();
    out.extend(reduction_instances());
    out.extend(packing_instances());
    out.extend(ackermann_instances());
    out
}
