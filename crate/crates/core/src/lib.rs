//! Sahlqvist correspondence for sabotage modal logic.
//!
//! The pipeline parses a modal inequality, decides whether it is Sahlqvist
//! for some order-type, rewrites it with an ALBA-style calculus into pure
//! quasi-inequalities, and translates those into first-order frame
//! conditions. A brute-force semantics over small finite frames checks every
//! stage.

pub mod alba;
pub mod cli;
pub mod fol;
pub mod sahlqvist;
pub mod semantics;
pub mod syntax;
