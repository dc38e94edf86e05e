//! Corpus-wide tests: golden CLI output, exit codes, serialization round trips
//! and model properties on every example program.

use std::path::{Path, PathBuf};

use crate::analysis::{check_locally_stratified_bounded, check_stratified, Stratification};
use crate::cli::run_with;
use crate::engine::{check_model_ho, evaluate, Evaluation};
use crate::frontend::{load, TypedProgram};
use crate::herbrand::{GroundOptions, GroundProgram, GroundProgramJson};

const DEPTHS: [usize; 4] = [1, 2, 3, 4];

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn corpus() -> Vec<(String, TypedProgram)> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(example("")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|x| x == "hop") {
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            if let Ok(p) = load(&std::fs::read_to_string(&path).unwrap()) {
                out.push((name, p));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn eval(p: &TypedProgram, depth: usize) -> Evaluation {
    evaluate(p, GroundOptions::new(depth)).unwrap()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("hopes")
        .chain(args.iter().copied())
        .map(String::from)
        .collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn cli_on(cmd: &str, file: &str, extra: &[&str]) -> (i32, String, String) {
    let path = example(file);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    cli(&args)
}

#[test]
fn model_text_golden() {
    let (code, out, _) = cli_on("model", "stages.hop", &[]);
    assert_eq!(code, 0);
    assert_eq!(out, "p=T0\nq=F0\ns=T1\nr=F1\nt=ZERO\n% depth 2 (ground at depth 3)\n");

    let (_, out, _) = cli_on("model", "subset.hop", &["--depth", "2"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines,
        [
            "p(a)=T0",
            "q(a)=T0",
            "q(b)=T0",
            "p(b)=F0",
            "nonsubset(q)(p)=T1",
            "nonsubset(p)(p)=F1",
            "nonsubset(p)(q)=F1",
            "nonsubset(q)(q)=F1",
            "subset(p)(p)=T2",
            "subset(p)(q)=T2",
            "subset(q)(q)=T2",
            "subset(q)(p)=F2",
            "% depth 3 (ground at depth 2)",
        ]
    );
}

#[test]
fn model_trace_lists_every_stage() {
    let (code, out, _) = cli_on("model", "stages.hop", &["--trace"]);
    assert_eq!(code, 0);
    assert!(
        out.starts_with("% stage 0: true {p} false {q}\n% stage 1: true {s} false {r}\n% stage 2: true {} false {}\n")
    );
    let (_, out, _) = cli_on("model", "stages.hop", &["--trace", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["trace"].as_array().unwrap().len(), 3);
    assert_eq!(v["trace"][1]["true"], serde_json::json!(["s"]));
}

#[test]
fn model_json_is_exact_and_deterministic() {
    let (_, a, _) = cli_on("model", "stages.hop", &["--format", "json"]);
    let (_, b, _) = cli_on("model", "stages.hop", &["--format", "json", "--sequential"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v.as_object().unwrap().keys().collect::<Vec<_>>(), ["atoms", "depth"]);
    assert_eq!(
        v["atoms"][4],
        serde_json::json!({"atom": "t", "value": "ZERO", "order": null})
    );
}

#[test]
fn every_command_is_deterministic_on_the_corpus() {
    for (name, _) in corpus() {
        for cmd in [
            "check", "ground", "model", "wf", "stable", "stratify", "locstrat", "ext",
        ] {
            let first = cli_on(cmd, &name, &["--format", "json"]);
            let again = cli_on(cmd, &name, &["--format", "json", "--sequential"]);
            assert_eq!(first, again, "{cmd} {name}");
            serde_json::from_str::<serde_json::Value>(&first.1).unwrap_or_else(|e| panic!("{cmd} {name}: {e}"));
        }
    }
}

#[test]
fn wf_and_stable_text() {
    let (_, out, _) = cli_on("wf", "stages.hop", &[]);
    assert_eq!(out, "p=true\nq=false\nr=false\ns=true\nt=undef\n");
    let (code, out, _) = cli_on("stable", "choice.hop", &["--ext"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{p(a), q(a), r(p), r(q)}  extensional: yes\n\
         {p(a), q(a), r(p), s(q)}  extensional: no (r(p), r(q), s(p), s(q))\n\
         {p(a), q(a), r(q), s(p)}  extensional: no (r(p), r(q), s(p), s(q))\n\
         {p(a), q(a), s(p), s(q)}  extensional: yes\n\
         % 4 stable model(s) at depth 3\n"
    );
    let (_, out, _) = cli_on("stable", "even_loop.hop", &[]);
    assert_eq!(out, "{p}\n{q}\n% 2 stable model(s) at depth 3\n");
}

#[test]
fn stratify_verdicts_and_exit_codes() {
    let (code, out, _) = cli_on("stratify", "stratified.hop", &[]);
    assert_eq!((code, out.as_str()), (0, "stratified\nS1 = {q}\nS2 = {p}\n"));
    let (code, out, _) = cli_on("stratify", "unstratified.hop", &[]);
    assert_eq!((code, out.as_str()), (1, "not stratified\ncycle: p, ~q, p\n"));
    let (code, out, _) = cli_on("stratify", "unstratified.hop", &["--format", "json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "not stratified");
    assert_eq!(v["witnesses"], serde_json::json!([["p", "~q", "p"]]));

    let (code, out, _) = cli_on("locstrat", "choice.hop", &[]);
    assert_eq!(code, 0);
    assert_eq!(out, "not locally stratified at depth 3\ncycle: r(p), ~s(p), ~r(p)\n");
}

#[test]
fn ext_verdict() {
    let (code, out, _) = cli_on("ext", "identity.hop", &[]);
    assert_eq!(code, 0);
    assert!(out.starts_with("extensional at depth 3\n"));
    let (_, out, _) = cli_on("ext", "identity.hop", &["--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        (v["verdict"].as_str(), v["depth"].as_u64()),
        (Some("extensional"), Some(3))
    );
}

#[test]
fn error_exit_codes() {
    let (code, out, err) = cli_on("model", "broken.hop", &[]);
    assert_eq!((code, out.as_str()), (2, ""));
    assert!(err.contains("broken.hop:5:1: type mismatch"), "{err}");

    let (code, _, err) = cli_on("model", "does_not_exist.hop", &[]);
    assert_eq!(code, 2, "{err}");
    assert_eq!(cli(&["model"]).0, 2);
    assert_eq!(cli(&["frobnicate", "x.hop"]).0, 2);
    assert_eq!(cli_on("model", "stages.hop", &["--depth", "0"]).0, 2);
    assert_eq!(cli_on("wf", "stages.hop", &["--trace"]).0, 2);
    assert_eq!(cli_on("model", "stages.hop", &["--ext"]).0, 2);

    let (code, _, err) = cli_on("stable", "identity.hop", &["--max-atoms", "3"]);
    assert_eq!(code, 3, "{err}");
    assert!(err.contains("atoms"), "{err}");
    assert_eq!(cli(&["--help"]).0, 0);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("hopes-out-{}.txt", std::process::id()));
    let (code, out, _) = cli_on("wf", "even_loop.hop", &["--out", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, ""));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "p=undef\nq=undef\n");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn checked_program_reparses_to_the_same_grounding() {
    for (name, p) in corpus() {
        let (code, printed, _) = cli_on("check", &name, &[]);
        assert_eq!(code, 0);
        let again = load(&printed).unwrap_or_else(|e| panic!("{name}: {e}\n{printed}"));
        for depth in DEPTHS {
            assert_eq!(
                eval(&p, depth).ground.to_string(),
                eval(&again, depth).ground.to_string(),
                "{name}"
            );
        }
    }
}

#[test]
fn ground_json_round_trip() {
    for (name, p) in corpus() {
        let g = eval(&p, 3).ground;
        let text = serde_json::to_string(&g.to_json()).unwrap();
        let back: GroundProgramJson = serde_json::from_str(&text).unwrap();
        assert_eq!(GroundProgram::from(&back).to_string(), g.to_string(), "{name}");
    }
}

#[test]
fn minimum_model_satisfies_the_source_clauses() {
    for (name, p) in corpus() {
        for depth in DEPTHS {
            let ev = eval(&p, depth);
            let check = check_model_ho(&ev, &ev.model.model).unwrap();
            assert!(check.is_model, "{name} at depth {depth}: {:?}", check.violations);
        }
    }
}

#[test]
fn stratified_programs_are_zero_free_and_locally_stratified() {
    let mut seen = 0;
    for (name, p) in corpus() {
        if let Stratification::Stratified(_) = check_stratified(&p) {
            seen += 1;
            for depth in DEPTHS {
                let ev = eval(&p, depth);
                assert!(
                    check_locally_stratified_bounded(&ev.ground).stratified_up_to_bound,
                    "{name}"
                );
                assert!(ev.ground.atoms().all(|a| !ev.model.model[a].is_zero()), "{name}");
            }
        }
    }
    assert!(seen >= 3);
}
