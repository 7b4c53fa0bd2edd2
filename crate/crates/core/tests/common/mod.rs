#![allow(dead_code)]

pub mod gen;
pub mod instances;
pub mod soundness;
