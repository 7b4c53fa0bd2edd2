use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use sml_corr::fol::{fo_equiv_on_small_frames, FOFormula, FOTerm};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sml-corr")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn term(v: &Value) -> FOTerm {
    let name = v.as_str().expect("term is a string");
    if name.starts_with('i') {
        FOTerm::nom(name)
    } else {
        FOTerm::var(name)
    }
}

/// Decoder for the JSON FO syntax, written against the documented shape.
fn decode(v: &Value) -> FOFormula {
    let obj = v.as_object().expect("formula is an object");
    assert_eq!(obj.len(), 1, "one connective per node: {v}");
    let (k, a) = obj.iter().next().unwrap();
    let arr = || a.as_array().expect("array operand");
    match k.as_str() {
        "eq" => FOFormula::Eq(term(&arr()[0]), term(&arr()[1])),
        "r" => FOFormula::R(term(&arr()[0]), term(&arr()[1])),
        "pred" => FOFormula::P(arr()[0].as_str().unwrap().to_string(), term(&arr()[1])),
        "not" => FOFormula::not(decode(a)),
        "and" => FOFormula::And(arr().iter().map(decode).collect()),
        "or" => FOFormula::Or(arr().iter().map(decode).collect()),
        "imp" => FOFormula::imp(decode(&arr()[0]), decode(&arr()[1])),
        "forall" => FOFormula::forall(term(&arr()[0]), decode(&arr()[1])),
        "exists" => FOFormula::exists(term(&arr()[0]), decode(&arr()[1])),
        other => panic!("unknown connective {other}"),
    }
}

fn correspondent_json(formula: &str) -> FOFormula {
    let o = run(&["correspond", "--formula", formula, "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).expect("valid JSON");
    assert!(v["quasi_inequalities"].as_array().is_some_and(|a| !a.is_empty()));
    decode(&v["first_order"])
}

#[test]
fn classify_exit_codes() {
    let ok = run(&["classify", "--formula", "[]p -> p"]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).contains("order-type: p=1"));

    let not = run(&["classify", "--formula", "[]<>p -> <>[]p"]);
    assert_eq!(code(&not), 1);

    let bad = run(&["classify", "--formula", "p -> ("]);
    assert_eq!(code(&bad), 2);
    assert!(!stderr(&bad).is_empty());
}

#[test]
fn correspond_outputs_known_conditions() {
    let v = |n: &str| FOTerm::var(n);
    let partial_function = FOFormula::forall_many(
        [v("a"), v("b")],
        FOFormula::imp(FOFormula::R(v("a"), v("b")), FOFormula::Eq(v("a"), v("b"))),
    );
    assert!(fo_equiv_on_small_frames(&correspondent_json("<>p -> p"), &partial_function, 3, &[]).unwrap());

    let nonempty_reflexive = FOFormula::imp(
        FOFormula::exists(v("a"), FOFormula::exists(v("b"), FOFormula::R(v("a"), v("b")))),
        FOFormula::forall(v("c"), FOFormula::R(v("c"), v("c"))),
    );
    assert!(fo_equiv_on_small_frames(&correspondent_json("[]p -> [!]p"), &nonempty_reflexive, 3, &[]).unwrap());

    let text = run(&["correspond", "--formula", "<>p -> p", "--format", "text"]);
    assert_eq!(code(&text), 0);
    assert!(stdout(&text).contains("forall"));
}

#[test]
fn correspond_failure_reports_stage() {
    let o = run(&["correspond", "--formula", "[]<>p -> <>[]p"]);
    assert_eq!(code(&o), 1);
    let all = stdout(&o) + &stderr(&o);
    assert!(all.contains("failure"));
    assert!(all.contains("stuck at"));
}

#[test]
fn tptp_output_is_a_single_fof_axiom() {
    let o = run(&["correspond", "--formula", "[]p -> [!]p", "--format", "tptp"]);
    assert_eq!(code(&o), 0);
    let body: Vec<String> = stdout(&o).lines().filter(|l| !l.starts_with('%')).map(str::to_string).collect();
    assert_eq!(body.len(), 1);
    assert!(body[0].starts_with("fof(corr, axiom, ") && body[0].ends_with(")."));
}

#[test]
fn trace_file_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.json");
    let o = run(&["correspond", "--formula", "<><>p -> <>p", "--trace", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let steps = v.as_array().or_else(|| v["steps"].as_array()).expect("list of steps");
    assert!(!steps.is_empty());
}

#[test]
fn verify_counts_and_failures() {
    let o = run(&["verify", "--formula", "[]p -> p", "--max-worlds", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("PASS: 530 frames (n=1: 2, n=2: 16, n=3: 512)"));

    assert_eq!(code(&run(&["verify", "--formula", "top -> <!>top", "--max-worlds", "3"])), 0);
    assert_eq!(code(&run(&["verify", "--formula", "[]<>p -> <>[]p"])), 1);
    assert_eq!(code(&run(&["verify", "--formula", "[]p -> p", "--max-worlds", "9"])), 2);
}

#[test]
fn parse_and_input_errors() {
    let o = run(&["parse", "--formula", "[]p -> p"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "[]p <= p");
    assert_eq!(code(&run(&["parse"])), 2);
    assert_eq!(code(&run(&["parse", "--file", "/nonexistent/corpus.txt"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn corpus_runs_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.txt");
    fs::write(&path, "# two entries\nT: []p -> p\n<>p -> p\n").unwrap();
    let a = run(&["corpus", "--file", path.to_str().unwrap()]);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert!(stdout(&a).contains("summary: 2 entries"));
    let b = run(&["corpus", "--file", path.to_str().unwrap()]);
    assert_eq!(stdout(&a), stdout(&b));

    fs::write(&path, "p\np\np\np\np\np\np -> (\n").unwrap();
    let bad = run(&["corpus", "--file", path.to_str().unwrap()]);
    assert_eq!(code(&bad), 2);
    assert!(stderr(&bad).contains("line 7"));
}

#[test]
fn in_process_entry_point_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let c = sml_corr::cli::run_with_args(["sml-corr", "classify", "--formula", "[]<>p -> <>[]p"], &mut out, &mut err);
    assert_eq!(c, sml_corr::cli::EXIT_FAILURE);
    let c = sml_corr::cli::run_with_args(["sml-corr", "parse", "--formula", "<>p -> p"], &mut out, &mut err);
    assert_eq!(c, sml_corr::cli::EXIT_OK);
    assert!(String::from_utf8(out).unwrap().contains("<>p <= p"));
}
