use std::fmt;

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    Preprocess,
    FirstApproximation,
    Outer,
    Inner,
    Packing,
    Ackermann,
    Output,
}

impl Stage {
    pub fn label(self) -> &'static str {
        match self {
            Stage::Preprocess => "preprocess",
            Stage::FirstApproximation => "first-approximation",
            Stage::Outer => "substage-1",
            Stage::Inner => "substage-2",
            Stage::Packing => "substage-3",
            Stage::Ackermann => "substage-4",
            Stage::Output => "output",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One rule application: the printed statements it removed and added.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationStep {
    pub stage: Stage,
    pub rule: String,
    pub consumed: Vec<String>,
    pub produced: Vec<String>,
}

impl DerivationStep {
    pub fn new(stage: Stage, rule: impl Into<String>, consumed: Vec<String>, produced: Vec<String>) -> Self {
        DerivationStep { stage, rule: rule.into(), consumed, produced }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "stage": self.stage.label(),
            "rule": self.rule,
            "consumed": self.consumed,
            "produced": self.produced,
        })
    }
}

pub fn trace_to_json(trace: &[DerivationStep]) -> Value {
    Value::Array(trace.iter().map(DerivationStep::to_json).collect())
}

/// Re-run a trace on printed statements: each step removes its consumed
/// statements and appends its produced ones, skipping any already present.
/// Returns `None` if a consumed statement is missing.
pub fn replay(initial: &[String], trace: &[DerivationStep]) -> Option<Vec<String>> {
    let mut items: Vec<String> = initial.to_vec();
    for step in trace {
        for c in &step.consumed {
            let k = items.iter().position(|x| x == c)?;
            items.remove(k);
        }
        for p in &step.produced {
            if !items.contains(p) {
                items.push(p.clone());
            }
        }
    }
    Some(items)
}
