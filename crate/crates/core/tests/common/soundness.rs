//! Brute-force equivalence of statement sets on every small frame.

use std::collections::BTreeSet;

use sml_corr::semantics::{enumerate_frames, eval_statement, KripkeFrame, Statement, Valuation};

/// How the premise set and the conclusion set are meant to correspond.
#[derive(Clone, Debug)]
pub enum Mode {
    /// Same truth value in every model.
    Equivalent,
    /// Premises hold iff the conclusions hold for some value of the listed
    /// nominals (which do not occur in the premises).
    ExistsFresh(Vec<String>),
    /// Conclusions hold iff the premises hold for some value of `p`.
    ExistsProp(String),
    /// Valid on the frame for all valuations, in both directions.
    ForallProp,
    /// A single premise `φ ≤ ψ` against `∀i0 ∀i1 (conclusions ⇒ i0 ≤ ¬i1)`.
    FirstApproximation(Statement),
}

fn all_holds(frame: &KripkeFrame, val: &Valuation, set: &[Statement]) -> bool {
    set.iter().all(|s| eval_statement(frame, val, s).expect("statement evaluates"))
}

fn names(set: &[Statement]) -> (BTreeSet<String>, BTreeSet<String>) {
    let mut props = BTreeSet::new();
    let mut noms = BTreeSet::new();
    for s in set {
        props.extend(s.props());
        noms.extend(s.free_nominals());
    }
    (props, noms)
}

/// Call `k` with every valuation of `props` and `noms` on an `n`-world frame,
/// stopping at the first `false`.
pub fn for_all_valuations(
    n: usize,
    base: &Valuation,
    props: &[String],
    noms: &[String],
    k: &mut impl FnMut(&Valuation) -> bool,
) -> bool {
    let all: u64 = (1 << n) - 1;
    let prop_combos: u64 = 1 << (n * props.len());
    let nom_combos: usize = n.pow(noms.len() as u32);
    let mut v = base.clone();
    for pc in 0..prop_combos {
        for (t, p) in props.iter().enumerate() {
            v.set_prop(p, (pc >> (t * n)) & all);
        }
        for nc in 0..nom_combos {
            let mut c = nc;
            for i in noms {
                v.set_nom(i, c % n);
                c /= n;
            }
            if !k(&v) {
                return false;
            }
        }
    }
    true
}

/// `Ok(())` or a description of the first violating frame.
pub fn check(premises: &[Statement], conclusions: &[Statement], mode: &Mode, max_n: usize) -> Result<(), String> {
    let mut both = premises.to_vec();
    both.extend_from_slice(conclusions);
    if let Mode::FirstApproximation(goal) = mode {
        both.push(goal.clone());
    }
    let (props, noms) = names(&both);
    for n in 1..=max_n {
        for frame in enumerate_frames(n).unwrap() {
            let ok = match mode {
                Mode::Equivalent => {
                    let props: Vec<String> = props.iter().cloned().collect();
                    let noms: Vec<String> = noms.iter().cloned().collect();
                    for_all_valuations(n, &Valuation::new(), &props, &noms, &mut |v| {
                        all_holds(&frame, v, premises) == all_holds(&frame, v, conclusions)
                    })
                }
                Mode::ExistsFresh(fresh) => {
                    let props: Vec<String> = props.iter().cloned().collect();
                    let outer: Vec<String> = noms.iter().filter(|i| !fresh.contains(i)).cloned().collect();
                    for_all_valuations(n, &Valuation::new(), &props, &outer, &mut |v| {
                        let lhs = all_holds(&frame, v, premises);
                        let rhs = !for_all_valuations(n, v, &[], fresh, &mut |w| !all_holds(&frame, w, conclusions));
                        lhs == rhs
                    })
                }
                Mode::ExistsProp(p) => {
                    let others: Vec<String> = props.iter().filter(|q| *q != p).cloned().collect();
                    let noms: Vec<String> = noms.iter().cloned().collect();
                    let p = vec![p.clone()];
                    for_all_valuations(n, &Valuation::new(), &others, &noms, &mut |v| {
                        let exists = !for_all_valuations(n, v, &p, &[], &mut |w| !all_holds(&frame, w, premises));
                        exists == all_holds(&frame, v, conclusions)
                    })
                }
                Mode::ForallProp => {
                    let props: Vec<String> = props.iter().cloned().collect();
                    let noms: Vec<String> = noms.iter().cloned().collect();
                    let valid = |set: &[Statement]| {
                        for_all_valuations(n, &Valuation::new(), &props, &noms, &mut |v| all_holds(&frame, v, set))
                    };
                    valid(premises) == valid(conclusions)
                }
                Mode::FirstApproximation(goal) => {
                    let props: Vec<String> = props.iter().cloned().collect();
                    let pair = vec!["i0".to_string(), "i1".to_string()];
                    let outer: Vec<String> = noms.iter().filter(|i| !pair.contains(i)).cloned().collect();
                    for_all_valuations(n, &Valuation::new(), &props, &outer, &mut |v| {
                        let quasi = for_all_valuations(n, v, &[], &pair, &mut |w| {
                            !all_holds(&frame, w, conclusions) || all_holds(&frame, w, std::slice::from_ref(goal))
                        });
                        all_holds(&frame, v, premises) == quasi
                    })
                }
            };
            if !ok {
                return Err(format!("violated on frame {frame}"));
            }
        }
    }
    Ok(())
}
