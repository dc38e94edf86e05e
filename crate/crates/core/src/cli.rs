//! The `hopes` command line.
//!
//! Exit codes: 0 success, 1 violation found (`stratify`, `ext`), 2 usage,
//! input or type errors, 3 resource caps exceeded.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::analysis::{check_extensional, check_locally_stratified_bounded, check_stratified, Stratification};
use crate::classical::{collapse, stable_models, ClassicalError, DEFAULT_MAX_ATOMS};
use crate::engine::{evaluate, sorted_atoms, Evaluation, Interpretation};
use crate::exec::Exec;
use crate::frontend::{load, FrontendError, TypedProgram};
use crate::herbrand::{GroundOptions, HerbrandError};
use crate::truth::TruthValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Parse and type-check, printing the typed program.
    Check,
    /// Print the ground instantiation.
    Ground,
    /// Print the minimum infinite-valued model.
    Model,
    /// Print the well-founded model (collapse of the minimum model).
    Wf,
    /// Enumerate stable models.
    Stable,
    /// Check stratification over predicate constants.
    Stratify,
    /// Check local stratification of the ground instantiation.
    Locstrat,
    /// Check extensionality of the minimum model.
    Ext,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "hopes", version, about = "Higher-order logic programs with negation")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Program source (`.hop`).
    #[arg(global = true)]
    pub input: Option<PathBuf>,
    /// Maximum number of symbols in a ground term.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub depth: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest ground program handed to stable model search.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ATOMS)]
    pub max_atoms: usize,
    /// Print the stages of the model construction (`model` only).
    #[arg(long, global = true)]
    pub trace: bool,
    /// Annotate stable models with an extensionality verdict (`stable` only).
    #[arg(long, global = true)]
    pub ext: bool,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Disable data-parallel evaluation.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{source}")]
    Frontend { path: String, source: FrontendError },
    #[error(transparent)]
    Herbrand(#[from] HerbrandError),
    #[error(transparent)]
    Classical(#[from] ClassicalError),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Frontend { .. } => 2,
            CliError::Herbrand(HerbrandError::BudgetExceeded { .. }) => 3,
            CliError::Herbrand(_) => 2,
            CliError::Classical(ClassicalError::TooManyAtoms { .. }) => 3,
            CliError::Classical(_) => 2,
        }
    }
}

struct Report {
    body: String,
    violation: bool,
}

/// Runs the command line with the process's standard streams.
pub fn run(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the command line, writing the report to `out` and diagnostics to `err`.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let config = match RunConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match execute(&config, err) {
        Ok(report) => {
            if let Some(path) = &config.out {
                if let Err(e) = std::fs::write(path, &report.body) {
                    let _ = writeln!(err, "error: {}: {e}", path.display());
                    return 2;
                }
            } else if out.write_all(report.body.as_bytes()).is_err() {
                return 2;
            }
            i32::from(report.violation)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn validate(c: &RunConfig) -> Result<(), CliError> {
    if c.trace && c.command != Command::Model {
        return Err(CliError::Usage("--trace only applies to `model`".into()));
    }
    if c.ext && c.command != Command::Stable {
        return Err(CliError::Usage("--ext only applies to `stable`".into()));
    }
    if c.input.is_none() {
        return Err(CliError::Usage("missing input file".into()));
    }
    Ok(())
}

fn load_program(c: &RunConfig) -> Result<TypedProgram, CliError> {
    let path = c.input.as_ref().expect("validated");
    let display = path.display().to_string();
    let source = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: display.clone(),
        source,
    })?;
    load(&source).map_err(|source| CliError::Frontend { path: display, source })
}

fn exec(c: &RunConfig) -> Exec {
    if c.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn evaluation(c: &RunConfig, p: &TypedProgram) -> Result<Evaluation, CliError> {
    let opts = GroundOptions {
        exec: exec(c),
        ..GroundOptions::new(c.depth as usize)
    };
    Ok(evaluate(p, opts)?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn execute(c: &RunConfig, err: &mut dyn Write) -> Result<Report, CliError> {
    validate(c)?;
    let p = load_program(c)?;
    if let Some(name) = &p.injected_constant {
        let _ = writeln!(err, "note: no individual constants; using reserved constant `{name}`");
    }
    let depth = c.depth as usize;
    let ok = |body: String| Ok(Report { body, violation: false });
    match c.command {
        Command::Check => ok(check_report(c, &p)),
        Command::Ground => {
            let ev = evaluation(c, &p)?;
            match c.format {
                Format::Json => ok(to_json(&ev.ground.to_json())),
                Format::Text => ok(format!("% ground instantiation at depth {depth}\n{}", ev.ground)),
            }
        }
        Command::Model => ok(model_report(c, &evaluation(c, &p)?)),
        Command::Wf => ok(wf_report(c, &evaluation(c, &p)?)),
        Command::Stable => {
            let ev = evaluation(c, &p)?;
            stable_report(c, &ev).map(|body| Report { body, violation: false })
        }
        Command::Stratify => Ok(stratify_report(c, &p)),
        Command::Locstrat => ok(locstrat_report(c, &evaluation(c, &p)?)),
        Command::Ext => Ok(ext_report(c, &evaluation(c, &p)?)),
    }
}

fn check_report(c: &RunConfig, p: &TypedProgram) -> String {
    match c.format {
        Format::Json => to_json(&json!({
            "predicates": p.predicates.iter().map(|(n, t)| (n.clone(), t.to_string())).collect::<std::collections::BTreeMap<_, _>>(),
            "functions": p.functions.iter().map(|(n, t)| (n.clone(), t.to_string())).collect::<std::collections::BTreeMap<_, _>>(),
            "constants": p.constants,
            "clauses": p.clauses.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = String::new();
            for (n, t) in &p.predicates {
                let _ = writeln!(s, "#pred {n} : {t}.");
            }
            for (n, t) in &p.functions {
                let _ = writeln!(s, "#func {n} : {t}.");
            }
            for clause in &p.clauses {
                let _ = writeln!(s, "{clause}");
            }
            s
        }
    }
}

fn model_report(c: &RunConfig, ev: &Evaluation) -> String {
    let g = &ev.ground;
    let m = &ev.model;
    let names = |set: &std::collections::BTreeSet<crate::herbrand::AtomId>| {
        let mut v: Vec<&str> = set.iter().map(|&a| g.atom_name(a)).collect();
        v.sort_unstable();
        v
    };
    match c.format {
        Format::Json => {
            let mut value = serde_json::to_value(m.to_json(g)).expect("model serializes");
            if c.trace {
                value["trace"] = m
                    .trace
                    .stages
                    .iter()
                    .map(|s| json!({"alpha": s.alpha, "true": names(&s.newly_true), "false": names(&s.newly_false)}))
                    .collect();
            }
            to_json(&value)
        }
        Format::Text => {
            let mut s = String::new();
            if c.trace {
                for st in &m.trace.stages {
                    let _ = writeln!(
                        s,
                        "% stage {}: true {{{}}} false {{{}}}",
                        st.alpha,
                        names(&st.newly_true).join(", "),
                        names(&st.newly_false).join(", ")
                    );
                }
            }
            for (a, v) in sorted_atoms(g, &m.model) {
                let _ = writeln!(s, "{}={v}", g.atom_name(a));
            }
            let _ = writeln!(s, "% depth {} (ground at depth {})", m.depth, ev.depth_bound());
            s
        }
    }
}

fn wf_report(c: &RunConfig, ev: &Evaluation) -> String {
    let g = &ev.ground;
    let wf = collapse(&ev.model);
    let mut atoms: Vec<(&str, String)> = g.atoms().map(|a| (g.atom_name(a), wf[a].to_string())).collect();
    atoms.sort();
    match c.format {
        Format::Json => to_json(&json!({
            "atoms": atoms.iter().map(|(a, v)| json!({"atom": a, "value": v})).collect::<Vec<_>>(),
            "depth": ev.depth_bound(),
        })),
        Format::Text => atoms.iter().map(|(a, v)| format!("{a}={v}\n")).collect(),
    }
}

fn stable_report(c: &RunConfig, ev: &Evaluation) -> Result<String, CliError> {
    let g = &ev.ground;
    let models = stable_models(g, c.max_atoms)?;
    let mut entries = Vec::new();
    for m in &models {
        let atoms = m.names(g);
        let report = c.ext.then(|| {
            let val = Interpretation::from_values(
                g.atoms()
                    .map(|a| if m.contains(a) { TruthValue::T0 } else { TruthValue::F0 })
                    .collect(),
            );
            check_extensional(&ev.program, &ev.universe, g, &val, exec(c))
        });
        entries.push((atoms, report));
    }
    Ok(match c.format {
        Format::Json => to_json(&json!({
            "models": entries.iter().map(|(atoms, report)| {
                let mut v = json!({"atoms": atoms});
                if let Some(r) = report {
                    v["extensional"] = json!(r.extensional);
                    v["witnesses"] = json!(r.violations);
                }
                v
            }).collect::<Vec<_>>(),
            "depth": ev.depth_bound(),
        })),
        Format::Text => {
            let mut s = String::new();
            for (atoms, report) in &entries {
                let _ = write!(s, "{{{}}}", atoms.join(", "));
                if let Some(r) = report {
                    let _ = write!(s, "  extensional: {}", if r.extensional { "yes" } else { "no" });
                    if !r.extensional {
                        let witnesses: Vec<&str> = r.witness_atoms().into_iter().collect();
                        let _ = write!(s, " ({})", witnesses.join(", "));
                    }
                }
                s.push('\n');
            }
            let _ = writeln!(s, "% {} stable model(s) at depth {}", entries.len(), ev.depth_bound());
            s
        }
    })
}

fn stratify_report(c: &RunConfig, p: &TypedProgram) -> Report {
    let result = check_stratified(p);
    let violation = matches!(result, Stratification::Violation { .. });
    let body = match (&result, c.format) {
        (Stratification::Stratified(s), Format::Json) => to_json(&json!({
            "verdict": "stratified",
            "witnesses": [],
            "strata": s.strata,
            "depth": null,
        })),
        (Stratification::Violation { cycle }, Format::Json) => to_json(&json!({
            "verdict": "not stratified",
            "witnesses": [cycle],
            "depth": null,
        })),
        (Stratification::Stratified(s), Format::Text) => {
            let mut out = String::from("stratified\n");
            for (i, layer) in s.layers().iter().enumerate() {
                let _ = writeln!(out, "S{} = {{{}}}", i + 1, layer.join(", "));
            }
            out
        }
        (Stratification::Violation { cycle }, Format::Text) => {
            format!("not stratified\ncycle: {}\n", cycle.join(", "))
        }
    };
    Report { body, violation }
}

fn locstrat_report(c: &RunConfig, ev: &Evaluation) -> String {
    let g = &ev.ground;
    let r = check_locally_stratified_bounded(g);
    let depth = ev.depth_bound();
    match c.format {
        Format::Json => {
            let mut value = json!({
                "verdict": if r.stratified_up_to_bound { "locally stratified" } else { "not locally stratified" },
                "witnesses": r.witness_cycle.iter().collect::<Vec<_>>(),
                "depth": depth,
            });
            if let Some(strata) = &r.strata {
                value["strata"] = g
                    .atoms()
                    .map(|a| (g.atom_name(a).to_string(), json!(strata[a.index()])))
                    .collect();
            }
            to_json(&value)
        }
        Format::Text => match &r.witness_cycle {
            None => format!("locally stratified up to depth {depth}\n"),
            Some(cycle) => format!("not locally stratified at depth {depth}\ncycle: {}\n", cycle.join(", ")),
        },
    }
}

fn ext_report(c: &RunConfig, ev: &Evaluation) -> Report {
    let r = check_extensional(&ev.program, &ev.universe, &ev.ground, &ev.model.model, exec(c));
    let body = match c.format {
        Format::Json => to_json(&json!({
            "verdict": if r.extensional { "extensional" } else { "not extensional" },
            "witnesses": r.violations,
            "vacuous": r.vacuous,
            "depth": r.depth,
        })),
        Format::Text => {
            let mut s = format!(
                "{} at depth {}\n",
                if r.extensional {
                    "extensional"
                } else {
                    "not extensional"
                },
                r.depth
            );
            for v in &r.violations {
                let _ = writeln!(
                    s,
                    "{:?} at {}: {} vs {}: {}={} but {}={}",
                    v.kind, v.ty, v.left, v.right, v.atom, v.value, v.other_atom, v.other_value
                );
            }
            if !r.vacuous.is_empty() {
                let _ = writeln!(s, "% {} pair(s) related only by vacuity", r.vacuous.len());
            }
            s
        }
    };
    Report {
        body,
        violation: !r.extensional,
    }
}
