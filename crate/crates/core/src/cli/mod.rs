//! Command-line front end.
//!
//! Exit codes: `0` success, `1` semantic failure (not Sahlqvist, rewriting
//! failed, or verification found a counterexample), `2` input error.

pub mod corpus;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::alba::{trace_to_json, AlbaError, AlbaFailure, DerivationStep, Stage};
use crate::fol::{emit_fo, to_json, to_tptp, FoFormat};
use crate::sahlqvist::OrderType;
use crate::semantics::{Ineq, DEFAULT_FRAME_CAP, HARD_FRAME_CAP};
use crate::syntax::parse_inequality;

pub use corpus::{load_corpus, parse_corpus, CorpusEntry, CorpusError};
pub use report::{classify, correspond, verify, Classification, Correspondence, FrameMismatch, Verification};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sml-corr", version, about = "Sahlqvist correspondence for sabotage modal logic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Parse and pretty-print the input inequality.
    Parse,
    /// Decide whether the input is Sahlqvist and show branch diagnostics.
    Classify,
    /// Compute the pure quasi-inequalities and the first-order correspondent.
    Correspond,
    /// Check the correspondent against brute-force frame validity.
    Verify,
    /// Classify, correspond and verify every entry of a corpus file.
    Corpus,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Formula or inequality (`phi <= psi`; `phi -> psi` is read as `phi <= psi`).
    #[arg(long, global = true, conflicts_with = "file")]
    pub formula: Option<String>,
    /// File with the input (a corpus file for `corpus`).
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    /// Largest frame size for `verify` and `corpus`.
    #[arg(long, global = true, default_value_t = DEFAULT_FRAME_CAP)]
    pub max_worlds: usize,
    /// Output format: text, json or tptp.
    #[arg(long, global = true, default_value = "text")]
    pub format: String,
    /// Write the derivation trace as JSON to this path.
    #[arg(long, global = true)]
    pub trace: Option<PathBuf>,
    /// Explicit order-type, e.g. `p=1,q=d`.
    #[arg(long, global = true)]
    pub order_type: Option<String>,
}

#[derive(Debug, Clone)]
pub enum InputSource {
    Formula(String),
    File(PathBuf),
}

/// Validated settings for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub input: InputSource,
    pub max_worlds: usize,
    pub format: FoFormat,
    pub trace: Option<PathBuf>,
    pub order_type: Option<OrderType>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<RunConfig, String> {
        let o = cli.opts;
        let input = match (o.formula, o.file) {
            (Some(f), None) => InputSource::Formula(f),
            (None, Some(p)) => InputSource::File(p),
            (None, None) => return Err("one of --formula or --file is required".into()),
            (Some(_), Some(_)) => return Err("--formula and --file are mutually exclusive".into()),
        };
        if o.max_worlds == 0 || o.max_worlds > HARD_FRAME_CAP {
            return Err(format!("--max-worlds must be between 1 and {HARD_FRAME_CAP}, got {}", o.max_worlds));
        }
        let format = o.format.parse::<FoFormat>().map_err(|e| e.to_string())?;
        let order_type = o.order_type.as_deref().map(OrderType::parse).transpose()?;
        Ok(RunConfig { command: cli.command, input, max_worlds: o.max_worlds, format, trace: o.trace, order_type })
    }
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match RunConfig::from_cli(cli) {
        Ok(cfg) => run(&cfg, out, err),
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cfg.command {
        Command::Corpus => run_corpus(cfg, out),
        cmd => match read_single(&cfg.input) {
            Ok(ineq) => match cmd {
                Command::Parse => run_parse(cfg, &ineq, out),
                Command::Classify => run_classify(cfg, &ineq, out),
                Command::Correspond => run_correspond(cfg, &ineq, out),
                Command::Verify => run_verify(cfg, &ineq, out),
                Command::Corpus => unreachable!(),
            },
            Err(msg) => Err(msg),
        },
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

type CmdResult = Result<i32, String>;

fn read_single(input: &InputSource) -> Result<Ineq, String> {
    match input {
        InputSource::Formula(text) => {
            let (l, r) = parse_inequality(text).map_err(|e| e.to_string())?;
            Ok(Ineq::plain(l, r))
        }
        InputSource::File(path) => {
            let content =
                fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let mut entries = parse_corpus(&content).map_err(|e| format!("{}: {e}", path.display()))?;
            match entries.len() {
                1 => Ok(entries.pop().unwrap().ineq),
                k => Err(format!("{}: expected exactly one formula, found {k}", path.display())),
            }
        }
    }
}

fn io(e: std::io::Error) -> String {
    format!("cannot write output: {e}")
}

fn write_trace(cfg: &RunConfig, trace: &[DerivationStep]) -> Result<(), String> {
    if let Some(path) = &cfg.trace {
        let text = serde_json::to_string_pretty(&trace_to_json(trace)).expect("trace serializes");
        fs::write(path, text + "\n").map_err(|e| format!("cannot write trace to {}: {e}", path.display()))?;
    }
    Ok(())
}

fn run_parse(cfg: &RunConfig, ineq: &Ineq, out: &mut dyn Write) -> CmdResult {
    match cfg.format {
        FoFormat::Json => writeln!(
            out,
            "{}",
            json!({ "inequality": ineq.to_string(), "lhs": ineq.lhs.to_string(), "rhs": ineq.rhs.to_string() })
        ),
        _ => writeln!(out, "{ineq}"),
    }
    .map_err(io)?;
    Ok(EXIT_OK)
}

fn run_classify(cfg: &RunConfig, ineq: &Ineq, out: &mut dyn Write) -> CmdResult {
    let c = classify(ineq, cfg.order_type.as_ref());
    let code = if c.is_sahlqvist() { EXIT_OK } else { EXIT_FAILURE };
    if cfg.format == FoFormat::Json {
        let branches: Vec<Value> = c
            .branches
            .iter()
            .map(|b| {
                json!({
                    "variable": b.variable, "side": b.side, "critical": b.critical,
                    "excellent": b.excellent, "path": b.path,
                })
            })
            .collect();
        let v = json!({
            "input": ineq.to_string(),
            "sahlqvist": c.is_sahlqvist(),
            "order_type": c.order_type.as_ref().map(ToString::to_string),
            "diagnosed_under": c.diagnosed_under.to_string(),
            "branches": branches,
        });
        writeln!(out, "{v}").map_err(io)?;
        return Ok(code);
    }
    let mut s = format!("input: {ineq}\n");
    match &c.order_type {
        Some(e) => s += &format!("verdict: Sahlqvist\norder-type: {e}\n"),
        None => s += "verdict: not Sahlqvist\n",
    }
    let under = c.diagnosed_under.to_string();
    s += &format!("branches (order-type {}):\n", if under.is_empty() { "-" } else { &under });
    for b in &c.branches {
        let tag = match (b.critical, b.excellent) {
            (false, _) => "non-critical",
            (true, true) => "critical, excellent",
            (true, false) => "critical, NOT excellent",
        };
        s += &format!("  {} in {}: {}  [{}]\n", b.variable, b.side, tag, b.path);
    }
    out.write_all(s.as_bytes()).map_err(io)?;
    Ok(code)
}

fn failure_report(f: &AlbaFailure) -> String {
    let (stage, item) = match &f.error {
        AlbaError::NotSahlqvist { .. } => ("classification".to_string(), None),
        AlbaError::Stage(e) => (e.stage.to_string(), Some(&e.item)),
        AlbaError::Precondition(e) => (Stage::Ackermann.to_string(), Some(&e.item)),
    };
    let mut s = format!("failure: {}\nstuck at: {stage}\n", f.error);
    if let Some(item) = item {
        s += &format!("stuck statement: {item}\n");
    }
    s + &format!("steps recorded: {}\n", f.trace.len())
}

fn run_correspond(cfg: &RunConfig, ineq: &Ineq, out: &mut dyn Write) -> CmdResult {
    let c = match correspond(ineq, cfg.order_type.as_ref()) {
        Ok(c) => c,
        Err(f) => {
            write_trace(cfg, &f.trace)?;
            let text = match cfg.format {
                FoFormat::Json => {
                    format!("{}\n", json!({ "input": ineq.to_string(), "failure": f.error.to_string() }))
                }
                _ => failure_report(&f),
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            return Ok(EXIT_FAILURE);
        }
    };
    write_trace(cfg, &c.run.trace)?;
    let quasi: Vec<String> = c.run.outputs.iter().map(ToString::to_string).collect();
    let text = match cfg.format {
        FoFormat::Json => format!(
            "{}\n",
            json!({
                "input": ineq.to_string(),
                "order_type": c.run.order_type.to_string(),
                "quasi_inequalities": quasi,
                "first_order": to_json(&c.first_order),
            })
        ),
        FoFormat::Tptp => {
            let mut s = format!("% input: {ineq}\n% order-type: {}\n", c.run.order_type);
            for q in &quasi {
                s += &format!("% {q}\n");
            }
            s + &to_tptp(&c.first_order, "corr") + "\n"
        }
        FoFormat::Text => {
            let mut s = format!("input: {ineq}\norder-type: {}\npure quasi-inequalities:\n", c.run.order_type);
            for q in &quasi {
                s += &format!("  {q}\n");
            }
            s + &format!("first-order correspondent:\n  {}\n", emit_fo(&c.first_order, FoFormat::Text))
        }
    };
    out.write_all(text.as_bytes()).map_err(io)?;
    Ok(EXIT_OK)
}

fn run_verify(cfg: &RunConfig, ineq: &Ineq, out: &mut dyn Write) -> CmdResult {
    let c = match correspond(ineq, cfg.order_type.as_ref()) {
        Ok(c) => c,
        Err(f) => {
            write_trace(cfg, &f.trace)?;
            out.write_all(format!("cannot verify: {}", failure_report(&f)).as_bytes()).map_err(io)?;
            return Ok(EXIT_FAILURE);
        }
    };
    write_trace(cfg, &c.run.trace)?;
    let v = verify(ineq, &c.first_order, cfg.max_worlds).map_err(|e| e.to_string())?;
    let counts: Vec<String> = v.frames_per_size.iter().map(|(n, k)| format!("n={n}: {k}")).collect();
    let text = match (&v.counterexample, cfg.format) {
        (_, FoFormat::Json) => format!(
            "{}\n",
            json!({
                "input": ineq.to_string(),
                "pass": v.passed(),
                "frames": v.total_frames(),
                "counterexample": v.counterexample.as_ref().map(|m| json!({
                    "frame": m.frame.to_json(), "modal": m.modal, "first_order": m.first_order,
                })),
            })
        ),
        (None, _) => format!("PASS: {} frames ({})\n", v.total_frames(), counts.join(", ")),
        (Some(m), _) => format!(
            "FAIL: frame {} — modal validity {}, first-order {}\n",
            m.frame, m.modal, m.first_order
        ),
    };
    out.write_all(text.as_bytes()).map_err(io)?;
    Ok(if v.passed() { EXIT_OK } else { EXIT_FAILURE })
}

struct CorpusRow {
    entry: CorpusEntry,
    order_type: Option<OrderType>,
    alba: Result<(), String>,
    verification: Option<Result<Verification, String>>,
}

impl CorpusRow {
    fn failed(&self) -> bool {
        self.order_type.is_some()
            && (self.alba.is_err()
                || !matches!(&self.verification, Some(Ok(v)) if v.passed()))
    }

    fn verify_cell(&self) -> String {
        match &self.verification {
            None => "-".into(),
            Some(Ok(v)) if v.passed() => format!("PASS ({})", v.total_frames()),
            Some(Ok(v)) => format!("FAIL ({})", v.counterexample.as_ref().unwrap().frame),
            Some(Err(e)) => format!("error: {e}"),
        }
    }
}

fn corpus_row(entry: CorpusEntry, cfg: &RunConfig) -> CorpusRow {
    let order_type = classify(&entry.ineq, cfg.order_type.as_ref()).order_type;
    if order_type.is_none() {
        return CorpusRow { entry, order_type, alba: Err("skipped".into()), verification: None };
    }
    match correspond(&entry.ineq, order_type.as_ref()) {
        Ok(c) => {
            let v = verify(&entry.ineq, &c.first_order, cfg.max_worlds).map_err(|e| e.to_string());
            CorpusRow { entry, order_type, alba: Ok(()), verification: Some(v) }
        }
        Err(f) => CorpusRow { entry, order_type, alba: Err(f.error.to_string()), verification: None },
    }
}

fn run_corpus(cfg: &RunConfig, out: &mut dyn Write) -> CmdResult {
    let entries = match &cfg.input {
        InputSource::File(p) => load_corpus(p).map_err(|e| e.to_string())?,
        InputSource::Formula(text) => parse_corpus(text).map_err(|e| e.to_string())?,
    };
    let rows: Vec<CorpusRow> = entries.into_par_iter().map(|e| corpus_row(e, cfg)).collect();
    let sahlqvist = rows.iter().filter(|r| r.order_type.is_some()).count();
    let failed = rows.iter().filter(|r| r.failed()).count();
    let verified = rows.iter().filter(|r| matches!(&r.verification, Some(Ok(v)) if v.passed())).count();

    let text = if cfg.format == FoFormat::Json {
        let items: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "label": r.entry.label,
                    "line": r.entry.line,
                    "input": r.entry.ineq.to_string(),
                    "sahlqvist": r.order_type.is_some(),
                    "order_type": r.order_type.as_ref().map(ToString::to_string),
                    "alba": match &r.alba { Ok(()) => "ok".to_string(), Err(e) => e.clone() },
                    "verified": r.verification.as_ref().map(|v| matches!(v, Ok(v) if v.passed())),
                })
            })
            .collect();
        let summary = json!({ "entries": rows.len(), "sahlqvist": sahlqvist, "verified": verified, "failed": failed });
        format!("{}\n", json!({ "entries": items, "summary": summary }))
    } else {
        let width = rows.iter().map(|r| r.entry.label.chars().count()).max().unwrap_or(5).max(5);
        let mut s = format!("{:<width$}  {:<9}  {:<12}  {:<8}  verify\n", "label", "sahlqvist", "order-type", "alba");
        for r in &rows {
            let ot = r.order_type.as_ref().map(ToString::to_string).unwrap_or_else(|| "-".into());
            let alba = match &r.alba {
                Ok(()) => "ok",
                Err(e) if e == "skipped" => "-",
                Err(_) => "failure",
            };
            s += &format!(
                "{:<width$}  {:<9}  {:<12}  {:<8}  {}\n",
                r.entry.label,
                if r.order_type.is_some() { "yes" } else { "no" },
                if ot.is_empty() { "(none)".to_string() } else { ot },
                alba,
                r.verify_cell()
            );
        }
        s + &format!(
            "summary: {} entries, {sahlqvist} Sahlqvist, {verified} verified, {failed} failed\n",
            rows.len()
        )
    };
    out.write_all(text.as_bytes()).map_err(io)?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
}
