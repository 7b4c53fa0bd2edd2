//! Finite Kripke semantics with edge deletion, statement evaluation and
//! exhaustive frame validity.

mod eval;
mod frame;
mod statement;
mod validity;

use thiserror::Error;

pub use eval::{extension, satisfies};
pub use frame::{DeletionContext, KripkeFrame, Valuation, WorldSet, MAX_FRAME_SIZE};
pub use statement::{Ineq, Mega, QuasiUq, Statement, UqIneq};
pub use validity::{
    enumerate_frames, enumerate_frames_capped, eval_statement, frame_valid, frame_valid_formula,
    FrameIter, DEFAULT_FRAME_CAP, HARD_FRAME_CAP,
};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("frames must have at least one world")]
    EmptyFrame,
    #[error("frame with {worlds} worlds exceeds the supported maximum of {max}")]
    FrameTooLarge { worlds: usize, max: usize },
    #[error("edge ({from},{to}) has an endpoint outside worlds 0..{worlds}")]
    EdgeOutOfRange { from: usize, to: usize, worlds: usize },
    #[error("malformed frame literal: {0}")]
    FrameLiteral(String),
    #[error("nominal `{0}` is not interpreted by the valuation")]
    UninterpretedNominal(String),
    #[error("propositional variable `{0}` is not interpreted by the valuation")]
    UninterpretedVariable(String),
    #[error("world {world} is outside 0..{worlds}")]
    WorldOutOfRange { world: usize, worlds: usize },
    #[error("frame size {requested} exceeds the configured cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
}
