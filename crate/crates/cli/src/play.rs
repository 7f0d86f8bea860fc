use crate::args::{Adversary, Common, PlayArgs, StrategyArg};
use crate::{emit, parse_formula, Output, EXIT_NEGATIVE, EXIT_OK};
use colkit::bruteforce::{self, Outcome, ProofStrategy};
use colkit::games::{
    catalogue, interpret, is_static, play_match, show_run, verify_strategy, Copycat, GameTree,
    Interpretation, Pass, Player, RandomAdversary, Strategy, DEFAULT_STATIC_BOUND,
};
use colkit::{Atom, Formula};
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Interpretations are capped so a formula with many general atoms does
/// not silently run for hours.
const MAX_INTERPRETATIONS: usize = 4096;

/// Every interpretation of `f`'s atoms: all truth values for elementary
/// atoms and every static catalogue game for general ones. The labels name
/// the choices.
fn all_interpretations(f: &Formula) -> Result<Vec<(Value, Interpretation)>, String> {
    let named: Vec<(String, GameTree)> = catalogue::named()
        .into_iter()
        .filter(|(_, g)| is_static(g, DEFAULT_STATIC_BOUND).unwrap_or(false))
        .collect();
    let atoms: Vec<Atom> = f.atoms().into_iter().collect();
    let mut out = vec![(BTreeMap::new(), Interpretation::new())];
    for a in &atoms {
        let choices: Vec<(String, GameTree)> = if a.is_elementary() {
            vec![
                ("B".into(), GameTree::leaf(Player::Env)),
                ("T".into(), GameTree::leaf(Player::Machine)),
            ]
        } else {
            named.clone()
        };
        let mut next = Vec::new();
        for (label, itp) in &out {
            for (name, g) in &choices {
                let mut label = label.clone();
                label.insert(a.name().to_string(), name.clone());
                let mut itp = itp.clone();
                if a.is_elementary() {
                    itp.elementary
                        .insert(a.clone(), g.winner() == Player::Machine);
                } else {
                    itp.general.insert(a.clone(), g.clone());
                }
                next.push((label, itp));
            }
        }
        if next.len() > MAX_INTERPRETATIONS {
            return Err(format!(
                "more than {MAX_INTERPRETATIONS} interpretations; pass --interp"
            ));
        }
        out = next;
    }
    Ok(out.into_iter().map(|(l, i)| (json!(l), i)).collect())
}

fn read_interpretations(path: &std::path::Path) -> Result<Vec<(Value, Interpretation)>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| format!("bad interpretation file: {e}"))?;
    let named = catalogue::named();
    let items = match v {
        Value::Array(items) => items,
        other => vec![other],
    };
    items
        .into_iter()
        .map(|item| {
            Interpretation::from_json(&item, &named)
                .map(|i| (item, i))
                .map_err(|e| e.to_string())
        })
        .collect()
}

pub fn run_play(p: &PlayArgs, c: &Common) -> Output {
    let f = match parse_formula(&p.formula) {
        Ok(f) => f,
        Err(o) => return o,
    };
    if p.adversary == Adversary::Random && c.seed.is_none() {
        return Output::error("--adversary random needs --seed");
    }
    let machine: Box<dyn Strategy> = match p.strategy {
        StrategyArg::Pass => Box::new(Pass),
        StrategyArg::Copycat => Box::new(Copycat::for_disjunction()),
        StrategyArg::Proof => {
            let budget = c
                .max_nodes
                .map_or(bruteforce::DEFAULT_BUDGET, |n| n as usize);
            match bruteforce::decide(&f, c.system, budget) {
                Ok(Outcome::Provable(proof)) => Box::new(ProofStrategy::new(proof)),
                Ok(Outcome::Unprovable) => {
                    let report = json!({ "verdict": "unprovable", "system": c.system.name(), "formula": f.ascii() });
                    return emit(
                        c,
                        &report,
                        format!("{}: unprovable, no strategy to play\n", f.ascii()),
                        EXIT_NEGATIVE,
                    );
                }
                Ok(Outcome::ResourceExhausted { .. }) => {
                    return Output {
                        code: crate::EXIT_EXHAUSTED,
                        ..Output::error("proof search ran out of nodes")
                    }
                }
                Err(e) => return Output::error(e.to_string()),
            }
        }
    };
    let itps = match &p.interp {
        Some(path) => read_interpretations(path),
        None => all_interpretations(&f),
    };
    let itps = match itps {
        Ok(v) => v,
        Err(e) => return Output::error(e),
    };
    let mut results = Vec::new();
    let mut text = String::new();
    let (mut won, mut played) = (0usize, 0usize);
    for (k, (label, itp)) in itps.iter().enumerate() {
        let g = match interpret(&f, itp) {
            Ok(g) => g,
            Err(e) => return Output::error(e.to_string()),
        };
        match p.adversary {
            Adversary::Exhaustive => {
                played += 1;
                let r = verify_strategy(&g, machine.as_ref());
                let ok = r.is_ok();
                won += usize::from(ok);
                let mut entry = json!({ "interpretation": label, "won": ok });
                if let Err(run) = r {
                    entry["losing_run"] = json!(run);
                    text += &format!("lost under {label}: {}\n", show_run(&run));
                }
                results.push(entry);
            }
            Adversary::Random => {
                let seed = c.seed.expect("checked above");
                for round in 0..p.rounds {
                    played += 1;
                    let env = RandomAdversary {
                        game: g.clone(),
                        player: Player::Env,
                        seed: seed ^ ((k as u64) << 32) ^ round,
                    };
                    let m = play_match(&g, machine.as_ref(), &env, 2 * g.depth() + 2);
                    let ok = m.winner == Player::Machine;
                    won += usize::from(ok);
                    if !ok {
                        text +=
                            &format!("lost under {label}, round {round}: {}\n", show_run(&m.run));
                    }
                    results.push(json!({
                        "interpretation": label,
                        "round": round,
                        "run": m.run,
                        "winner": m.winner,
                    }));
                }
            }
        }
    }
    let verdict = if won == played { "valid" } else { "invalid" };
    let code = if won == played {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    let report = json!({
        "verdict": verdict,
        "formula": f.ascii(),
        "adversary": match p.adversary { Adversary::Exhaustive => "exhaustive", Adversary::Random => "random" },
        "won": won,
        "played": played,
        "matches": results,
    });
    text += &format!("{}: {verdict}, won {won} of {played}\n", f.ascii());
    emit(c, &report, text, code)
}
