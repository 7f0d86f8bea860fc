//! The `colkit` command line: argument handling, dispatch to the provers and
//! checkers, and report formatting. [`run`] returns what `main` prints so
//! tests can drive the whole front end in-process.

pub mod args;
mod corpus;
mod play;
mod render;

use args::{Cli, Command, Common, Format, ModeArg};
use clap::Parser;
use colkit::bruteforce::{self, BfProof, Outcome};
use colkit::cl15::{self, Cl15Proof, Mode};
use colkit::cl5::{self, Cl5Proof, SearchOutcome};
use colkit::system::gate;
use colkit::{parse, Formula, SystemId};
use serde_json::{json, Value};
use std::sync::mpsc;
use std::time::{Duration, Instant};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

/// What one invocation printed and its exit status.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn error(msg: impl Into<String>) -> Output {
        Output {
            stdout: String::new(),
            stderr: msg.into() + "\n",
            code: EXIT_ERROR,
        }
    }
}

/// Runs the command line `argv` (program name first).
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Output {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Output {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    let c = &cli.common;
    match &cli.command {
        Command::Parse { formula } => run_parse(formula, c),
        Command::Prove { formula } => run_solve(formula, c, true),
        Command::Decide { formula } => run_solve(formula, c, false),
        Command::Check { file } => match std::fs::read_to_string(file) {
            Ok(text) => run_check(&text, c),
            Err(e) => Output::error(format!("cannot read {}: {e}", file.display())),
        },
        Command::Play(p) => play::run_play(p, c),
        Command::Corpus { path, cases } => corpus::run_corpus(path.as_deref(), *cases, c),
        Command::Render { input } => render::run_render(input, c),
    }
}

pub(crate) fn parse_formula(text: &str) -> Result<Formula, Output> {
    parse(text).map_err(|e| Output::error(format!("parse error: {e}")))
}

pub(crate) fn emit(c: &Common, report: &Value, text: String, code: i32) -> Output {
    let stdout = match c.format {
        Format::Json => serde_json::to_string_pretty(report).expect("serializable") + "\n",
        _ => text,
    };
    Output {
        stdout,
        stderr: String::new(),
        code,
    }
}

fn run_parse(text: &str, c: &Common) -> Output {
    let f = match parse_formula(text) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let n = f.normalize();
    let systems: Vec<&str> = SystemId::ALL
        .iter()
        .filter(|&&s| gate(&f, s).is_ok())
        .map(|s| s.name())
        .collect();
    let report = json!({
        "ascii": f.ascii(),
        "unicode": f.unicode(),
        "normalized": n.ascii(),
        "recurrence_complexity": n.recurrence_complexity(),
        "systems": systems,
    });
    let text = format!(
        "{}\n{}\nnormalized: {}\nrecurrence complexity: {}\nlanguages: {}\n",
        f.ascii(),
        f.unicode(),
        n.ascii(),
        n.recurrence_complexity(),
        systems.join(", ")
    );
    if c.format == Format::Dot {
        return Output {
            stdout: render::formula_dot(&f),
            stderr: String::new(),
            code: EXIT_OK,
        };
    }
    emit(c, &report, text, EXIT_OK)
}

/// A proof from any of the provers.
#[derive(Clone, Debug)]
pub enum AnyProof {
    Bf(BfProof),
    Cl5(Cl5Proof),
    Cl15(Cl15Proof),
}

impl AnyProof {
    pub fn to_value(&self) -> Value {
        match self {
            AnyProof::Bf(p) => serde_json::to_value(p),
            AnyProof::Cl5(p) => serde_json::to_value(p),
            AnyProof::Cl15(p) => serde_json::to_value(p),
        }
        .expect("serializable")
    }

    pub fn len(&self) -> usize {
        match self {
            AnyProof::Bf(p) => p.steps.len(),
            AnyProof::Cl5(p) => p.steps.len(),
            AnyProof::Cl15(p) => p.steps.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Runs the matching checker.
    pub fn check(&self) -> Result<(), (usize, String)> {
        match self {
            AnyProof::Bf(p) => bruteforce::check_proof(p).map_err(|e| (e.step, e.reason)),
            AnyProof::Cl5(p) => cl5::check_proof(p).map_err(|e| (e.step, e.reason)),
            AnyProof::Cl15(p) => cl15::check_proof(p).map_err(|e| (e.step, e.reason)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Provable,
    Unprovable,
    Exhausted,
}

impl Answer {
    pub fn name(self) -> &'static str {
        match self {
            Answer::Provable => "provable",
            Answer::Unprovable => "unprovable",
            Answer::Exhausted => "resource-exhausted",
        }
    }

    pub fn code(self) -> i32 {
        match self {
            Answer::Provable => EXIT_OK,
            Answer::Unprovable => EXIT_NEGATIVE,
            Answer::Exhausted => EXIT_EXHAUSTED,
        }
    }
}

/// Result of running a prover once.
#[derive(Clone, Debug)]
pub struct Solved {
    pub answer: Answer,
    pub proof: Option<AnyProof>,
    pub nodes: Option<usize>,
    pub bounds: Value,
}

/// Budgets for one prover run; `None` takes the prover's default.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_proof_length: Option<u64>,
    pub max_oformulas: Option<u64>,
    pub contraction_budget: Option<u64>,
    pub mode: Option<Mode>,
}

impl Budget {
    pub fn from_common(c: &Common) -> Budget {
        Budget {
            max_nodes: c.max_nodes,
            max_proof_length: c.max_proof_length,
            max_oformulas: c.max_oformulas,
            contraction_budget: c.contraction_budget,
            mode: c.mode.map(|m| match m {
                ModeArg::Cl15c => Mode::Cl15c,
                ModeArg::Bounded => Mode::Bounded,
                ModeArg::DepthLimited => Mode::DepthLimited,
            }),
        }
    }

    pub fn cl15_config(&self) -> cl15::SearchConfig {
        let d = cl15::SearchConfig::default();
        let budget = self
            .contraction_budget
            .map_or(d.contraction_budget, |k| k as usize);
        let mode = self
            .mode
            .unwrap_or(if budget == 0 { Mode::Cl15c } else { d.mode });
        cl15::SearchConfig {
            contraction_budget: if mode == Mode::Cl15c { 0 } else { budget },
            max_nodes: self.max_nodes.map_or(d.max_nodes, |n| n as usize),
            max_proof_length: self
                .max_proof_length
                .map_or(d.max_proof_length, |n| n as usize),
            max_oformulas: self.max_oformulas.map_or(d.max_oformulas, |n| n as usize),
            mode,
            commutative_identity: false,
        }
    }
}

/// Decides `f` in `system`, with a proof when `want_proof`. Errors are
/// language-gate or parameter problems.
pub fn solve(
    f: &Formula,
    system: SystemId,
    budget: &Budget,
    want_proof: bool,
) -> Result<Solved, String> {
    match system {
        SystemId::Cl1 | SystemId::Cl2 => {
            let max = budget
                .max_nodes
                .map_or(bruteforce::DEFAULT_BUDGET, |n| n as usize);
            let bounds = json!({ "max_nodes": max });
            let out = bruteforce::decide(f, system, max).map_err(|e| e.to_string())?;
            Ok(match out {
                Outcome::Provable(p) => Solved {
                    answer: Answer::Provable,
                    proof: Some(AnyProof::Bf(p)),
                    nodes: None,
                    bounds,
                },
                Outcome::Unprovable => Solved {
                    answer: Answer::Unprovable,
                    proof: None,
                    nodes: None,
                    bounds,
                },
                Outcome::ResourceExhausted { nodes } => Solved {
                    answer: Answer::Exhausted,
                    proof: None,
                    nodes: Some(nodes),
                    bounds,
                },
            })
        }
        SystemId::Cl5 | SystemId::Ccc => {
            let cfg = cl5::SearchConfig {
                max_nodes: budget.max_nodes.map_or(200_000, |n| n as usize),
            };
            let bounds = json!({ "max_nodes": cfg.max_nodes });
            if !cl5::decide(f, system).map_err(|e| e.to_string())? {
                return Ok(Solved {
                    answer: Answer::Unprovable,
                    proof: None,
                    nodes: None,
                    bounds,
                });
            }
            if !want_proof {
                return Ok(Solved {
                    answer: Answer::Provable,
                    proof: None,
                    nodes: None,
                    bounds,
                });
            }
            Ok(
                match cl5::search_proof(f, system, &cfg).map_err(|e| e.to_string())? {
                    SearchOutcome::Found(p) => Solved {
                        answer: Answer::Provable,
                        proof: Some(AnyProof::Cl5(p)),
                        nodes: None,
                        bounds,
                    },
                    // the decider said yes, so this is a search limit
                    SearchOutcome::NotFound | SearchOutcome::Exhausted => Solved {
                        answer: Answer::Exhausted,
                        proof: None,
                        nodes: None,
                        bounds,
                    },
                },
            )
        }
        SystemId::Cl15 => {
            let cfg = budget.cl15_config();
            let bounds = serde_json::to_value(&cfg).expect("serializable");
            let (v, nodes) = cl15::decide(f, &cfg).map_err(|e| e.to_string())?;
            Ok(match v {
                cl15::Verdict::Provable(p) => {
                    let proof = want_proof.then_some(AnyProof::Cl15(p));
                    Solved {
                        answer: Answer::Provable,
                        proof,
                        nodes: Some(nodes),
                        bounds,
                    }
                }
                cl15::Verdict::Unprovable { .. } => Solved {
                    answer: Answer::Unprovable,
                    proof: None,
                    nodes: Some(nodes),
                    bounds,
                },
                cl15::Verdict::ResourceExhausted { .. } => Solved {
                    answer: Answer::Exhausted,
                    proof: None,
                    nodes: Some(nodes),
                    bounds,
                },
            })
        }
    }
}

/// Runs `job` on a worker thread, giving up after `ms` milliseconds.
fn with_timeout<T: Send + 'static>(
    ms: Option<u64>,
    job: impl FnOnce() -> T + Send + 'static,
) -> Option<T> {
    let Some(ms) = ms else { return Some(job()) };
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(job());
    });
    rx.recv_timeout(Duration::from_millis(ms)).ok()
}

fn run_solve(text: &str, c: &Common, want_proof: bool) -> Output {
    let f = match parse_formula(text) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let system = c.system;
    let budget = Budget::from_common(c);
    let start = Instant::now();
    let job = {
        let (f, budget) = (f.clone(), budget.clone());
        move || solve(&f, system, &budget, want_proof)
    };
    let solved = match with_timeout(c.timeout_ms, job) {
        None => {
            let report = json!({
                "verdict": Answer::Exhausted.name(),
                "system": system.name(),
                "formula": f.ascii(),
                "reason": "timeout",
                "bounds": { "timeout_ms": c.timeout_ms },
            });
            let text = format!(
                "{}: resource-exhausted (timeout after {} ms)\n",
                f.ascii(),
                c.timeout_ms.unwrap_or(0)
            );
            return emit(c, &report, text, EXIT_EXHAUSTED);
        }
        Some(Err(e)) => return Output::error(e),
        Some(Ok(s)) => s,
    };
    let elapsed = start.elapsed();
    let mut stats = json!({});
    if let Some(n) = solved.nodes {
        stats["nodes"] = json!(n);
    }
    if c.timings {
        stats["elapsed_ms"] = json!(elapsed.as_secs_f64() * 1e3);
    }
    let mut report = json!({
        "verdict": solved.answer.name(),
        "system": system.name(),
        "formula": f.ascii(),
        "bounds": solved.bounds,
        "stats": stats,
    });
    if let Some(p) = &solved.proof {
        report["proof"] = p.to_value();
        report["steps"] = json!(p.len());
    }
    if c.format == Format::Dot {
        if let Some(p) = &solved.proof {
            return Output {
                stdout: render::proof_dot(p),
                stderr: String::new(),
                code: solved.answer.code(),
            };
        }
    }
    let mut text = format!("{}: {}", f.ascii(), solved.answer.name());
    if solved.answer != Answer::Provable {
        text += &format!(" under {}", solved.bounds);
    }
    text.push('\n');
    if let Some(p) = &solved.proof {
        text += &render::proof_text(p);
    }
    emit(c, &report, text, solved.answer.code())
}

/// Reads a proof file of any system, or the `proof` field of a
/// `prove --format json` report.
pub fn read_proof(text: &str) -> Result<AnyProof, String> {
    let mut v: Value = serde_json::from_str(text).map_err(|e| format!("not JSON: {e}"))?;
    if let Some(p) = v.get_mut("proof").filter(|p| p.is_object()) {
        v = p.take();
    }
    let system = v
        .get("system")
        .and_then(Value::as_str)
        .ok_or("missing \"system\"")?;
    let system: SystemId = system.parse()?;
    let bad = |e: serde_json::Error| format!("not a {system} proof: {e}");
    Ok(match system {
        SystemId::Cl1 | SystemId::Cl2 => AnyProof::Bf(serde_json::from_value(v).map_err(bad)?),
        SystemId::Cl5 | SystemId::Ccc => AnyProof::Cl5(serde_json::from_value(v).map_err(bad)?),
        SystemId::Cl15 => AnyProof::Cl15(serde_json::from_value(v).map_err(bad)?),
    })
}

fn run_check(text: &str, c: &Common) -> Output {
    let proof = match read_proof(text) {
        Ok(p) => p,
        Err(e) => return Output::error(e),
    };
    match proof.check() {
        Ok(()) => {
            let report = json!({ "verdict": "valid", "steps": proof.len() });
            emit(
                c,
                &report,
                format!("accepted: {} steps\n", proof.len()),
                EXIT_OK,
            )
        }
        Err((step, reason)) => {
            let report = json!({ "verdict": "invalid", "step": step, "reason": reason });
            let mut out = emit(
                c,
                &report,
                format!("rejected at step {step}: {reason}\n"),
                EXIT_NEGATIVE,
            );
            out.stderr = format!("step {step}: {reason}\n");
            out
        }
    }
}
