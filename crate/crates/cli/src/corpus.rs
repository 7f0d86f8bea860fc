use crate::args::{Common, Format};
use crate::{emit, read_proof, solve, Answer, AnyProof, Budget, Output, EXIT_NEGATIVE, EXIT_OK};
use colkit::bruteforce::{self, Outcome, ProofStrategy};
use colkit::cl15::{self, RuleTag};
use colkit::cl5::{self, ShallowCirquent};
use colkit::families::{random_formula, random_recurrence_formula, Op};
use colkit::games::{interpret, uniform_policy, verify_strategy, Interpretation};
use colkit::{data, parse, SystemId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};
use std::path::Path;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub formula: String,
    pub system: String,
    pub expect: Expect,
    #[serde(default)]
    pub budget: Budget,
    #[serde(rename = "ref", default)]
    pub reference: String,
    /// Exact proof length, when given.
    #[serde(default)]
    pub steps: Option<usize>,
    /// Exact number of CL15 Contraction steps, when given.
    #[serde(default)]
    pub contractions: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Provable,
    Unprovable,
}

/// Parses a manifest; blank lines and lines starting with `#` are skipped.
pub fn parse_manifest(text: &str) -> Result<Vec<(usize, Entry)>, String> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let e: Entry = serde_json::from_str(line).map_err(|e| format!("line {}: {e}", n + 1))?;
        out.push((n + 1, e));
    }
    Ok(out)
}

fn load(path: Option<&Path>) -> Result<Vec<(String, String)>, String> {
    let Some(path) = path else {
        return Ok(vec![("corpus.jsonl".into(), data::CORPUS.into())]);
    };
    let read = |p: &Path| {
        std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))
    };
    if path.is_dir() {
        let mut files: Vec<_> = std::fs::read_dir(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
            .collect();
        files.sort();
        files
            .iter()
            .map(|p| {
                Ok((
                    p.file_name().unwrap().to_string_lossy().into_owned(),
                    read(p)?,
                ))
            })
            .collect()
    } else {
        Ok(vec![(path.display().to_string(), read(path)?)])
    }
}

/// Runs one entry; `Err` holds why it failed.
fn run_entry(e: &Entry) -> (String, Result<(), String>) {
    let system: SystemId = match e.system.parse() {
        Ok(s) => s,
        Err(msg) => return ("error".into(), Err(msg)),
    };
    let f = match parse(&e.formula) {
        Ok(f) => f,
        Err(err) => return ("error".into(), Err(err.to_string())),
    };
    let solved = match solve(&f, system, &e.budget, true) {
        Ok(s) => s,
        Err(msg) => return ("error".into(), Err(msg)),
    };
    let got = solved.answer.name().to_string();
    let want = match e.expect {
        Expect::Provable => Answer::Provable,
        Expect::Unprovable => Answer::Unprovable,
    };
    if solved.answer != want {
        return (got, Err(format!("expected {}", want.name())));
    }
    if let Some(p) = &solved.proof {
        if let Err((step, reason)) = p.check() {
            return (
                got,
                Err(format!("emitted proof fails at step {step}: {reason}")),
            );
        }
        if let Some(n) = e.steps {
            if p.len() != n {
                return (
                    got,
                    Err(format!("proof has {} steps, expected {n}", p.len())),
                );
            }
        }
        if let (Some(n), AnyProof::Cl15(p)) = (e.contractions, p) {
            let k = p.count(RuleTag::C);
            if k != n {
                return (
                    got,
                    Err(format!("proof uses {k} contractions, expected {n}")),
                );
            }
        }
    }
    (got, Ok(()))
}

struct Suite {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

/// Seeded cross-checks between independent deciders.
fn suites(seed: u64, cases: usize) -> Vec<Suite> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let ops = [Op::Pand, Op::Por, Op::Chand, Op::Chor];
    let mut oracle = Suite {
        name: "cl1-vs-uniform-policy",
        cases,
        failures: Vec::new(),
    };
    let mut strategy = Suite {
        name: "cl1-strategy-soundness",
        cases: 0,
        failures: Vec::new(),
    };
    for _ in 0..cases {
        let f = random_formula(&mut rng, &["p", "q", "r"], &ops, 6);
        let proved =
            bruteforce::decide(&f, SystemId::Cl1, bruteforce::DEFAULT_BUDGET).expect("cl1 formula");
        let oracle_says = uniform_policy(&f).expect("elementary").1.is_some();
        if proved.is_provable() != oracle_says {
            oracle.failures.push(f.ascii());
        }
        if let Outcome::Provable(p) = proved {
            strategy.cases += 1;
            let s = ProofStrategy::new(p);
            let atoms: Vec<_> = f.atoms().into_iter().collect();
            let sound = (0..1u32 << atoms.len()).all(|row| {
                let mut itp = Interpretation::new();
                for (i, a) in atoms.iter().enumerate() {
                    itp.elementary.insert(a.clone(), row >> i & 1 == 1);
                }
                verify_strategy(&interpret(&f, &itp).expect("interpretable"), &s).is_ok()
            });
            if !sound {
                strategy.failures.push(f.ascii());
            }
        }
    }
    out.push(oracle);
    out.push(strategy);

    let mut cl5s = Suite {
        name: "ars-vs-binary",
        cases,
        failures: Vec::new(),
    };
    for _ in 0..cases {
        let f = random_formula(&mut rng, &["P", "Q", "R"], &[Op::Pand, Op::Por], 7).normalize();
        if f.count(&|g| g.is_literal()) > 8 {
            cl5s.cases -= 1;
            continue;
        }
        let ars = cl5::ars_valid(
            &ShallowCirquent::singleton(f.clone()),
            cl5::DEFAULT_MAX_PORTS,
        )
        .expect("small");
        let binary = cl5::decide_binary(&f);
        let ccc = cl5::decide(&f, SystemId::Ccc).expect("and/or formula");
        if ars != binary || (binary && !ccc) {
            cl5s.failures.push(f.ascii());
        }
    }
    out.push(cl5s);

    let mut cl15s = Suite {
        name: "cl15-search-proofs-check",
        cases,
        failures: Vec::new(),
    };
    let cfg = cl15::SearchConfig {
        max_nodes: 20_000,
        ..cl15::SearchConfig::default()
    };
    for _ in 0..cases {
        let f = random_recurrence_formula(&mut rng, &["F", "G"], 5);
        match cl15::decide(&f, &cfg) {
            Ok((cl15::Verdict::Provable(p), _)) => {
                if let Err(e) = cl15::check_proof(&p) {
                    cl15s.failures.push(format!("{}: {e}", f.ascii()));
                }
            }
            Ok(_) => {}
            Err(e) => cl15s.failures.push(format!("{}: {e}", f.ascii())),
        }
    }
    out.push(cl15s);
    out
}

pub fn run_corpus(path: Option<&Path>, cases: usize, c: &Common) -> Output {
    let files = match load(path) {
        Ok(f) => f,
        Err(e) => return Output::error(e),
    };
    let mut entries = Vec::new();
    let mut text = String::new();
    let mut failed = 0usize;
    for (name, body) in &files {
        let manifest = match parse_manifest(body) {
            Ok(m) => m,
            Err(e) => return Output::error(format!("{name}: {e}")),
        };
        for (line, e) in manifest {
            let (got, r) = run_entry(&e);
            let pass = r.is_ok();
            let mut row = json!({
                "file": name,
                "line": line,
                "formula": e.formula,
                "system": e.system,
                "expect": match e.expect { Expect::Provable => "provable", Expect::Unprovable => "unprovable" },
                "got": got,
                "pass": pass,
                "ref": e.reference,
            });
            if let Err(why) = &r {
                failed += 1;
                row["reason"] = json!(why);
                text += &format!("FAIL {name}:{line} {} [{}] {why}\n", e.formula, e.system);
            }
            entries.push(row);
        }
    }
    let mut proofs = Vec::new();
    if path.is_none() {
        for (name, body) in data::PROOFS {
            let ok =
                read_proof(body).and_then(|p| p.check().map_err(|(s, r)| format!("step {s}: {r}")));
            if let Err(why) = &ok {
                failed += 1;
                text += &format!("FAIL bundled proof {name}: {why}\n");
            }
            proofs.push(json!({ "name": name, "accepted": ok.is_ok() }));
        }
    }
    let seed = c.seed.unwrap_or(0);
    let mut suite_rows = Vec::new();
    for s in suites(seed, cases) {
        if !s.failures.is_empty() {
            failed += 1;
            text += &format!("FAIL suite {}: {}\n", s.name, s.failures.join("; "));
        }
        suite_rows.push(json!({ "name": s.name, "cases": s.cases, "failures": s.failures }));
    }
    let passed = entries.iter().filter(|r| r["pass"] == json!(true)).count();
    text += &format!(
        "{passed}/{} corpus entries passed, {} bundled proofs checked, {} suites run (seed {seed})\n",
        entries.len(),
        proofs.len(),
        suite_rows.len()
    );
    let report: Value = json!({
        "seed": seed,
        "entries": entries,
        "proofs": proofs,
        "suites": suite_rows,
        "total": entries.len(),
        "passed": passed,
        "ok": failed == 0,
    });
    let code = if failed == 0 { EXIT_OK } else { EXIT_NEGATIVE };
    let c2 = if c.format == Format::Dot {
        Common {
            format: Format::Text,
            ..c.clone()
        }
    } else {
        c.clone()
    };
    emit(&c2, &report, text, code)
}
