use rayon::prelude::*;

use crate::alba::{run_alba_with, AlbaFailure, AlbaRun};
use crate::fol::{correspondent, fo_frame_valid, FOFormula};
use crate::sahlqvist::{branch_reports, find_order_type, is_epsilon_sahlqvist, BranchReport, OrderType};
use crate::semantics::{enumerate_frames_capped, frame_valid, Ineq, KripkeFrame, SemanticsError, Statement, HARD_FRAME_CAP};

#[derive(Clone, Debug)]
pub struct Classification {
    /// The witnessing order-type, if the inequality is Sahlqvist.
    pub order_type: Option<OrderType>,
    /// The order-type the branch diagnostics were computed for.
    pub diagnosed_under: OrderType,
    pub branches: Vec<BranchReport>,
}

impl Classification {
    pub fn is_sahlqvist(&self) -> bool {
        self.order_type.is_some()
    }
}

/// With `forced`, only that order-type is tried; otherwise the first
/// succeeding one is reported, and diagnostics for a failure use `ε ≡ 1`.
pub fn classify(ineq: &Ineq, forced: Option<&OrderType>) -> Classification {
    let lhs = ineq.lhs.eliminate_iff();
    let rhs = ineq.rhs.eliminate_iff();
    let order_type = match forced {
        Some(e) => is_epsilon_sahlqvist(&lhs, &rhs, e).then(|| e.clone()),
        None => find_order_type(&lhs, &rhs),
    };
    let diagnosed_under = order_type.clone().or_else(|| forced.cloned()).unwrap_or_default();
    let branches = branch_reports(&lhs, &rhs, &diagnosed_under);
    Classification { order_type, diagnosed_under, branches }
}

#[derive(Clone, Debug)]
pub struct Correspondence {
    pub run: AlbaRun,
    pub first_order: FOFormula,
}

pub fn correspond(ineq: &Ineq, forced: Option<&OrderType>) -> Result<Correspondence, AlbaFailure> {
    let run = run_alba_with(ineq, forced.cloned())?;
    let first_order = correspondent(&run.outputs);
    Ok(Correspondence { run, first_order })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameMismatch {
    pub frame: KripkeFrame,
    pub modal: bool,
    pub first_order: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    /// `(n, frames checked)` for every size examined.
    pub frames_per_size: Vec<(usize, usize)>,
    pub counterexample: Option<FrameMismatch>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn total_frames(&self) -> usize {
        self.frames_per_size.iter().map(|(_, c)| c).sum()
    }
}

/// Compare modal frame validity of `ineq` with truth of `fo` on every frame
/// with `1..=max_worlds` worlds, stopping at the first disagreement.
pub fn verify(ineq: &Ineq, fo: &FOFormula, max_worlds: usize) -> Result<Verification, SemanticsError> {
    if max_worlds > HARD_FRAME_CAP {
        return Err(SemanticsError::CapExceeded { requested: max_worlds, cap: HARD_FRAME_CAP });
    }
    let vars: Vec<String> = ineq.props().into_iter().collect();
    let stmt = Statement::Ineq(ineq.clone());
    let mut frames_per_size = Vec::new();
    for n in 1..=max_worlds {
        let frames: Vec<KripkeFrame> = enumerate_frames_capped(n, HARD_FRAME_CAP)?.collect();
        let count = frames.len();
        let verdicts: Vec<Result<Option<FrameMismatch>, SemanticsError>> = frames
            .into_par_iter()
            .map(|frame| {
                let modal = frame_valid(&frame, &stmt, &vars)?;
                let first_order = fo_frame_valid(&frame, fo, &[]);
                Ok((modal != first_order).then_some(FrameMismatch { frame, modal, first_order }))
            })
            .collect();
        frames_per_size.push((n, count));
        for v in verdicts {
            if let Some(m) = v? {
                return Ok(Verification { frames_per_size, counterexample: Some(m) });
            }
        }
    }
    Ok(Verification { frames_per_size, counterexample: None })
}
