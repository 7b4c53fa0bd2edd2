//! The rewrite engine: preprocessing, first approximation, the four
//! reduction substages and assembly of the pure output.
//!
//! Every rewrite is recorded as a [`DerivationStep`]; replaying the trace of
//! a run over printed statements, starting from the input inequality,
//! reproduces the printed output exactly (see [`trace::replay`]).

mod item;
mod preprocess;
mod rules;
mod system;
pub mod trace;

use thiserror::Error;

use crate::sahlqvist::{find_order_type, is_epsilon_sahlqvist, OrderType};
use crate::semantics::{Ineq, QuasiUq};
use crate::syntax::FreshNominals;

pub use item::{Guard, Item, Side};
pub use preprocess::{distribute_once, eliminate_once, preprocess, preprocess_step, preprocess_traced, split_once};
pub use rules::{inner_step, outer_step, pack_item, second_splitting, Rewrite};
pub use system::{
    ackermann_eliminate, check_ackermann_ready, check_inner_shapes, check_outer_shapes, check_preprocessed,
    eliminate_all, first_approximation, goal, output, pack, reduce_inner, reduce_outer, Handedness, System,
    GOAL_FROM, GOAL_TO,
};
pub use trace::{replay, trace_to_json, DerivationStep, Stage};

/// A statement a stage could not bring into its required shape.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{stage}: {reason}: {item}")]
pub struct StageError {
    pub stage: Stage,
    pub item: String,
    pub reason: String,
}

/// A side condition of the Ackermann rule that does not hold.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("cannot eliminate `{variable}`: {reason}: {item}")]
pub struct PreconditionError {
    pub variable: String,
    pub item: String,
    pub reason: String,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum AlbaError {
    #[error("`{input}` is not Sahlqvist{}", .order_type.as_ref().map(|e| format!(" for order-type {e}")).unwrap_or_default())]
    NotSahlqvist { input: String, order_type: Option<OrderType> },
    #[error(transparent)]
    Stage(#[from] StageError),
    #[error(transparent)]
    Precondition(#[from] PreconditionError),
}

/// A failed run together with everything recorded before it stopped.
#[derive(Clone, Debug, Error)]
#[error("{error}")]
pub struct AlbaFailure {
    pub error: AlbaError,
    pub trace: Vec<DerivationStep>,
}

#[derive(Clone, Debug)]
pub struct AlbaRun {
    pub input: Ineq,
    pub order_type: OrderType,
    pub preprocessed: Vec<Ineq>,
    /// One quasi-inequality per preprocessed inequality, in order.
    pub outputs: Vec<QuasiUq>,
    pub trace: Vec<DerivationStep>,
}

impl AlbaRun {
    /// The printed output list a replay of the trace must arrive at.
    pub fn printed_outputs(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for q in &self.outputs {
            let s = q.to_string();
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out
    }
}

pub fn run_alba(ineq: &Ineq) -> Result<AlbaRun, AlbaFailure> {
    run_alba_with(ineq, None)
}

/// Run with an explicit order-type instead of the first one found.
pub fn run_alba_with(ineq: &Ineq, order_type: Option<OrderType>) -> Result<AlbaRun, AlbaFailure> {
    let mut trace = Vec::new();
    let fail = |error: AlbaError, trace: Vec<DerivationStep>| AlbaFailure { error, trace };

    let lhs = ineq.lhs.eliminate_iff();
    let rhs = ineq.rhs.eliminate_iff();
    let eps = match order_type {
        Some(e) if is_epsilon_sahlqvist(&lhs, &rhs, &e) => e,
        Some(e) => {
            return Err(fail(AlbaError::NotSahlqvist { input: ineq.to_string(), order_type: Some(e) }, trace))
        }
        None => match find_order_type(&lhs, &rhs) {
            Some(e) => e,
            None => return Err(fail(AlbaError::NotSahlqvist { input: ineq.to_string(), order_type: None }, trace)),
        },
    };

    let preprocessed = preprocess_traced(ineq, &mut trace);
    if let Err((item, reason)) = check_preprocessed(&preprocessed, &eps) {
        return Err(fail(StageError { stage: Stage::Preprocess, item, reason }.into(), trace));
    }

    let mut fresh = FreshNominals::starting_at(2);
    fresh.reserve([GOAL_FROM, GOAL_TO]);
    fresh.reserve(ineq.all_nominals());

    let mut outputs = Vec::new();
    for pre in &preprocessed {
        let mut sys = first_approximation(pre, &eps);
        let result = reduce_system(&mut sys, &mut fresh);
        trace.append(&mut sys.trace);
        if let Err(error) = result {
            return Err(fail(error, trace));
        }
        let q = output(&mut sys);
        trace.append(&mut sys.trace);
        outputs.push(q);
    }
    Ok(AlbaRun { input: ineq.clone(), order_type: eps, preprocessed, outputs, trace })
}

fn reduce_system(sys: &mut System, fresh: &mut FreshNominals) -> Result<(), AlbaError> {
    reduce_outer(sys, fresh)?;
    reduce_inner(sys, fresh)?;
    pack(sys)?;
    eliminate_all(sys)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::Statement;
    use crate::syntax::parse_inequality;

    fn run(text: &str) -> AlbaRun {
        let (l, r) = parse_inequality(text).unwrap();
        run_alba(&Ineq::plain(l, r)).unwrap_or_else(|e| panic!("{text}: {e}"))
    }

    fn printed(text: &str) -> Vec<String> {
        run(text).outputs.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn diamond_p_below_p() {
        assert_eq!(printed("<>p <= p"), vec!["i0 <= dia^{} i2 && i2 <= ~i1 => i0 <= ~i1"]);
    }

    #[test]
    fn box_below_global_box() {
        let r = run("[]p <= [!]p");
        assert_eq!(r.outputs.len(), 1);
        assert!(Statement::QuasiUq(r.outputs[0].clone()).is_pure());
    }

    #[test]
    fn outputs_are_pure_and_replay() {
        for text in ["<>p <= p", "[]p <= [!]p", "top <= <!>top", "<!>[]p <= []<!>p", "p <= <>p", "[]p <= p"] {
            let r = run(text);
            assert!(r.outputs.iter().all(|q| q.premises.iter().all(|u| u.body.is_pure())), "{text}");
            let initial = vec![r.input.to_string()];
            assert_eq!(replay(&initial, &r.trace), Some(r.printed_outputs()), "{text}");
        }
    }

    #[test]
    fn non_sahlqvist_fails_without_order_type() {
        let (l, r) = parse_inequality("[]<>p <= <>[]p").unwrap();
        let err = run_alba(&Ineq::plain(l, r)).unwrap_err();
        assert!(matches!(err.error, AlbaError::NotSahlqvist { .. }));
    }

    #[test]
    fn fresh_names_are_never_reused() {
        let r = run("<>p | <>q <= <>r");
        assert_eq!(r.outputs.len(), 2);
        let fresh: Vec<std::collections::BTreeSet<String>> = r
            .outputs
            .iter()
            .map(|q| {
                let mut s = Statement::QuasiUq(q.clone()).all_nominals();
                s.remove(GOAL_FROM);
                s.remove(GOAL_TO);
                s
            })
            .collect();
        assert!(!fresh[0].is_empty() && !fresh[1].is_empty());
        assert!(fresh[0].is_disjoint(&fresh[1]), "{fresh:?}");
    }
}
