use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use super::SemanticsError;

/// Largest frame the bitmask representation supports (8 × 8 edges in a `u64`).
pub const MAX_FRAME_SIZE: usize = 8;

/// A bitmask of worlds: bit `w` is set when world `w` is a member.
pub type WorldSet = u64;

/// A finite Kripke frame on worlds `0..n` with starting relation `r0`,
/// stored as a bitmask whose bit `u * n + v` encodes the edge `(u, v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KripkeFrame {
    n: usize,
    r0: u64,
}

impl KripkeFrame {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, SemanticsError> {
        let mut frame = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(SemanticsError::EdgeOutOfRange { from: u, to: v, worlds: n });
            }
            frame.r0 |= frame.edge_bit(u, v);
        }
        Ok(frame)
    }

    pub fn empty(n: usize) -> Result<Self, SemanticsError> {
        if n == 0 {
            return Err(SemanticsError::EmptyFrame);
        }
        if n > MAX_FRAME_SIZE {
            return Err(SemanticsError::FrameTooLarge { worlds: n, max: MAX_FRAME_SIZE });
        }
        Ok(KripkeFrame { n, r0: 0 })
    }

    /// Frame from the raw edge bitmask (bit `u * n + v`).
    pub fn from_bits(n: usize, bits: u64) -> Result<Self, SemanticsError> {
        let mut frame = Self::empty(n)?;
        let mask = if n * n == 64 { u64::MAX } else { (1u64 << (n * n)) - 1 };
        frame.r0 = bits & mask;
        Ok(frame)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn r0(&self) -> u64 {
        self.r0
    }

    pub fn all_worlds(&self) -> WorldSet {
        (1u64 << self.n) - 1
    }

    #[inline]
    pub fn edge_bit(&self, u: usize, v: usize) -> u64 {
        1u64 << (u * self.n + v)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.r0 & self.edge_bit(u, v) != 0
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        edges_of(self.n, self.r0)
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self.edges().into_iter().map(|(u, v)| json!([u, v])).collect();
        json!({ "n": self.n, "edges": edges })
    }

    pub fn from_json(value: &Value) -> Result<Self, SemanticsError> {
        let bad = |why: &str| SemanticsError::FrameLiteral(why.to_string());
        let n = value.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing integer field `n`"))?;
        let mut edges = Vec::new();
        for e in value.get("edges").and_then(Value::as_array).ok_or_else(|| bad("missing array field `edges`"))? {
            let pair = e.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("edge must be a pair"))?;
            let u = pair[0].as_u64().ok_or_else(|| bad("edge endpoint must be an integer"))?;
            let v = pair[1].as_u64().ok_or_else(|| bad("edge endpoint must be an integer"))?;
            edges.push((u as usize, v as usize));
        }
        KripkeFrame::new(n as usize, &edges)
    }
}

pub(crate) fn edges_of(n: usize, bits: u64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut b = bits;
    while b != 0 {
        let k = b.trailing_zeros() as usize;
        out.push((k / n, k % n));
        b &= b - 1;
    }
    out
}

/// `n=3; edges=(0,1),(1,2)`
impl fmt::Display for KripkeFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}; edges=", self.n)?;
        let parts: Vec<String> = self.edges().iter().map(|(u, v)| format!("({u},{v})")).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for KripkeFrame {
    type Err = SemanticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| SemanticsError::FrameLiteral(format!("{why} in `{s}`"));
        let mut n = None;
        let mut edges = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = part.split_once('=').ok_or_else(|| bad("expected `key=value`"))?;
            match key.trim() {
                "n" => n = Some(val.trim().parse::<usize>().map_err(|_| bad("bad world count"))?),
                "edges" => {
                    let compact: String = val.chars().filter(|c| !c.is_whitespace()).collect();
                    if compact.is_empty() {
                        continue;
                    }
                    let inner = compact
                        .strip_prefix('(')
                        .and_then(|r| r.strip_suffix(')'))
                        .ok_or_else(|| bad("edges must look like (u,v),(u,v)"))?;
                    for pair in inner.split("),(") {
                        let (u, v) = pair.split_once(',').ok_or_else(|| bad("edge must be `(u,v)`"))?;
                        let u = u.parse::<usize>().map_err(|_| bad("bad edge endpoint"))?;
                        let v = v.parse::<usize>().map_err(|_| bad("bad edge endpoint"))?;
                        edges.push((u, v));
                    }
                }
                other => return Err(bad(&format!("unknown key `{other}`"))),
            }
        }
        KripkeFrame::new(n.ok_or_else(|| bad("missing `n=`"))?, &edges)
    }
}

/// Interpretation of propositional variables (as world sets) and nominals
/// (as single worlds).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuation {
    pub props: BTreeMap<String, WorldSet>,
    pub noms: BTreeMap<String, usize>,
}

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_prop(mut self, p: &str, worlds: &[usize]) -> Self {
        self.props.insert(p.to_string(), worlds.iter().fold(0, |acc, w| acc | 1 << w));
        self
    }

    pub fn with_nom(mut self, i: &str, w: usize) -> Self {
        self.noms.insert(i.to_string(), w);
        self
    }

    pub fn set_prop(&mut self, p: &str, worlds: WorldSet) {
        self.props.insert(p.to_string(), worlds);
    }

    pub fn set_nom(&mut self, i: &str, w: usize) {
        self.noms.insert(i.to_string(), w);
    }
}

/// Edges deleted by sabotage steps so far, kept apart from the frame's
/// starting relation. The current relation is `r0` minus these edges.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DeletionContext {
    deleted: u64,
}

impl DeletionContext {
    pub fn none() -> Self {
        Self::default()
    }

    /// Deleted edges as `(u, v)` pairs; pairs outside `r0` are dropped.
    pub fn from_edges(frame: &KripkeFrame, edges: &[(usize, usize)]) -> Self {
        let bits = edges
            .iter()
            .filter(|(u, v)| *u < frame.size() && *v < frame.size())
            .fold(0, |acc, &(u, v)| acc | frame.edge_bit(u, v));
        DeletionContext { deleted: bits & frame.r0() }
    }

    pub fn bits(&self) -> u64 {
        self.deleted
    }

    pub fn current_relation(&self, frame: &KripkeFrame) -> u64 {
        frame.r0() & !self.deleted
    }
}
