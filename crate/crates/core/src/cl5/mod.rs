//! Shallow cirquents: the systems CL5 and its extension CCC by contraction,
//! with the resource (ARS) semantics and the normal-binary decision method.

mod ars;
mod binary;
mod dot;
mod search;

pub use ars::{ars_valid, ars_witness, ports, Port, DEFAULT_MAX_PORTS};
pub use binary::decide_binary;
pub use dot::to_dot;
pub use search::{search_proof, SearchConfig, SearchOutcome};

use crate::formula::{is_tautology, Formula};
use crate::system::{gate, GateError, SystemId};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A pool of oformulas and a list of ogroups, each a set of pool positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShallowCirquent {
    pub pool: Vec<Formula>,
    pub groups: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Cl5Error {
    #[error("malformed cirquent: {0}")]
    Malformed(String),
    #[error("rule does not apply: {0}")]
    Rule(String),
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error("{0} ports exceed the arrangement bound of {1}")]
    TooManyPorts(usize, usize),
}

fn rule_err<T>(msg: impl Into<String>) -> Result<T, Cl5Error> {
    Err(Cl5Error::Rule(msg.into()))
}

impl ShallowCirquent {
    pub fn new(pool: Vec<Formula>, groups: Vec<Vec<usize>>) -> Result<ShallowCirquent, Cl5Error> {
        let c = ShallowCirquent { pool, groups };
        c.validate()?;
        Ok(c)
    }

    pub fn empty() -> ShallowCirquent {
        ShallowCirquent {
            pool: vec![],
            groups: vec![],
        }
    }

    /// The cirquent with one oformula in one ogroup.
    pub fn singleton(f: Formula) -> ShallowCirquent {
        ShallowCirquent {
            pool: vec![f],
            groups: vec![vec![0]],
        }
    }

    pub fn validate(&self) -> Result<(), Cl5Error> {
        for g in &self.groups {
            if g.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Cl5Error::Malformed(format!(
                    "ogroup {g:?} is not a sorted set"
                )));
            }
            if g.iter().any(|&i| i >= self.pool.len()) {
                return Err(Cl5Error::Malformed(format!(
                    "ogroup {g:?} points outside the pool"
                )));
            }
        }
        for f in &self.pool {
            if !f.is_normal()
                || f.count(&|g| {
                    !matches!(g, Formula::Lit { .. } | Formula::Pand(_) | Formula::Por(_))
                }) > 0
            {
                return Err(Cl5Error::Malformed(format!(
                    "{f} is not a normalized and/or formula"
                )));
            }
        }
        Ok(())
    }

    pub fn groups_containing(&self, i: usize) -> Vec<usize> {
        (0..self.groups.len())
            .filter(|&g| self.groups[g].contains(&i))
            .collect()
    }

    /// Removes pool position `i` and renumbers the ogroups.
    fn without_oformula(&self, i: usize) -> ShallowCirquent {
        let mut pool = self.pool.clone();
        pool.remove(i);
        let groups = self
            .groups
            .iter()
            .map(|g| {
                g.iter()
                    .filter(|&&j| j != i)
                    .map(|&j| if j > i { j - 1 } else { j })
                    .collect()
            })
            .collect();
        ShallowCirquent { pool, groups }
    }

    /// Inserts `f` at pool position `i` with no arcs.
    fn with_oformula(&self, i: usize, f: Formula) -> ShallowCirquent {
        let mut pool = self.pool.clone();
        pool.insert(i, f);
        let groups = self
            .groups
            .iter()
            .map(|g| g.iter().map(|&j| if j >= i { j + 1 } else { j }).collect())
            .collect();
        ShallowCirquent { pool, groups }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<ShallowCirquent, Cl5Error> {
        let c: ShallowCirquent =
            serde_json::from_value(v.clone()).map_err(|e| Cl5Error::Malformed(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    /// Conjunction over ogroups of the disjunction of their members.
    pub fn classical_formula(&self) -> Formula {
        let group = |g: &Vec<usize>| match g.len() {
            0 => Formula::False,
            1 => self.pool[g[0]].clone(),
            _ => Formula::Por(g.iter().map(|&i| self.pool[i].clone()).collect()),
        };
        match self.groups.len() {
            0 => Formula::True,
            1 => group(&self.groups[0]),
            _ => Formula::Pand(self.groups.iter().map(group).collect()),
        }
    }
}

/// Rule instances, read from premises to conclusion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", content = "params", rename_all = "snake_case")]
pub enum Cl5Rule {
    /// The empty cirquent.
    AxiomEmpty,
    /// `⟨¬F, F⟩` with the single ogroup `{0,1}`.
    AxiomIdentity {
        formula: Formula,
    },
    /// Juxtaposes two premises.
    Mix,
    ExchangeOformula {
        i: usize,
    },
    ExchangeOgroup {
        i: usize,
    },
    /// Inserts an oformula that belongs to no ogroup.
    WeakenPool {
        at: usize,
        formula: Formula,
    },
    /// Adds an arc from an ogroup to an oformula.
    WeakenOgroup {
        group: usize,
        oformula: usize,
    },
    /// Replaces an ogroup by two adjacent copies.
    DuplicateDown {
        group: usize,
    },
    /// Merges two adjacent identical ogroups.
    DuplicateUp {
        group: usize,
    },
    /// Merges two adjacent identical oformulas; CCC only.
    Contract {
        oformula: usize,
    },
    /// Merges adjacent `F1..Fk` into `F1 ∨ … ∨ Fk`.
    OrIntro {
        oformula: usize,
        arity: usize,
    },
    /// Merges adjacent `F1..Fk` into `F1 ∧ … ∧ Fk`, joining their ogroups.
    AndIntro {
        oformula: usize,
        arity: usize,
    },
}

impl Cl5Rule {
    pub fn premise_count(&self) -> usize {
        match self {
            Cl5Rule::AxiomEmpty | Cl5Rule::AxiomIdentity { .. } => 0,
            Cl5Rule::Mix => 2,
            _ => 1,
        }
    }
}

/// Applies `rule` to `premises`, returning the conclusion.
pub fn apply_forward(
    premises: &[&ShallowCirquent],
    rule: &Cl5Rule,
) -> Result<ShallowCirquent, Cl5Error> {
    if premises.len() != rule.premise_count() {
        return rule_err(format!(
            "{} premises given, {} expected",
            premises.len(),
            rule.premise_count()
        ));
    }
    let out = match rule {
        Cl5Rule::AxiomEmpty => ShallowCirquent::empty(),
        Cl5Rule::AxiomIdentity { formula } => ShallowCirquent {
            pool: vec![formula.negate(), formula.normalize()],
            groups: vec![vec![0, 1]],
        },
        Cl5Rule::Mix => {
            let (a, b) = (premises[0], premises[1]);
            let shift = a.pool.len();
            let mut pool = a.pool.clone();
            pool.extend(b.pool.iter().cloned());
            let mut groups = a.groups.clone();
            groups.extend(
                b.groups
                    .iter()
                    .map(|g| g.iter().map(|&i| i + shift).collect::<Vec<_>>()),
            );
            ShallowCirquent { pool, groups }
        }
        Cl5Rule::ExchangeOformula { i } => {
            let c = premises[0];
            let i = *i;
            if i + 1 >= c.pool.len() {
                return rule_err("no oformula to exchange with");
            }
            let mut pool = c.pool.clone();
            pool.swap(i, i + 1);
            let swap = |j: usize| {
                if j == i {
                    i + 1
                } else if j == i + 1 {
                    i
                } else {
                    j
                }
            };
            let groups = c
                .groups
                .iter()
                .map(|g| {
                    let mut h: Vec<usize> = g.iter().map(|&j| swap(j)).collect();
                    h.sort();
                    h
                })
                .collect();
            ShallowCirquent { pool, groups }
        }
        Cl5Rule::ExchangeOgroup { i } => {
            let mut c = premises[0].clone();
            if i + 1 >= c.groups.len() {
                return rule_err("no ogroup to exchange with");
            }
            c.groups.swap(*i, i + 1);
            c
        }
        Cl5Rule::WeakenPool { at, formula } => {
            let c = premises[0];
            if *at > c.pool.len() {
                return rule_err("insertion point outside the pool");
            }
            c.with_oformula(*at, formula.clone())
        }
        Cl5Rule::WeakenOgroup { group, oformula } => {
            let mut c = premises[0].clone();
            if *group >= c.groups.len() || *oformula >= c.pool.len() {
                return rule_err("arc endpoints out of range");
            }
            let g = &mut c.groups[*group];
            if g.contains(oformula) {
                return rule_err("arc already present");
            }
            g.push(*oformula);
            g.sort();
            c
        }
        Cl5Rule::DuplicateDown { group } => {
            let mut c = premises[0].clone();
            if *group >= c.groups.len() {
                return rule_err("no such ogroup");
            }
            let g = c.groups[*group].clone();
            c.groups.insert(group + 1, g);
            c
        }
        Cl5Rule::DuplicateUp { group } => {
            let mut c = premises[0].clone();
            if group + 1 >= c.groups.len() || c.groups[*group] != c.groups[group + 1] {
                return rule_err("ogroups are not adjacent copies");
            }
            c.groups.remove(group + 1);
            c
        }
        Cl5Rule::Contract { oformula } => {
            let c = premises[0];
            let i = *oformula;
            if i + 1 >= c.pool.len() || c.pool[i] != c.pool[i + 1] {
                return rule_err("oformulas are not adjacent copies");
            }
            merge(c, i, 2, c.pool[i].clone())
        }
        Cl5Rule::OrIntro { oformula, arity } => {
            let c = premises[0];
            let (i, k) = (*oformula, *arity);
            if k < 2 || i + k > c.pool.len() {
                return rule_err("bad disjunction span");
            }
            merge(c, i, k, Formula::Por(c.pool[i..i + k].to_vec()))
        }
        Cl5Rule::AndIntro { oformula, arity } => and_intro(premises[0], *oformula, *arity)?,
    };
    Ok(out)
}

/// Replaces pool positions `i..i+k` by `f`, redirecting all their arcs.
fn merge(c: &ShallowCirquent, i: usize, k: usize, f: Formula) -> ShallowCirquent {
    let mut pool = c.pool[..i].to_vec();
    pool.push(f);
    pool.extend(c.pool[i + k..].iter().cloned());
    let map = |j: usize| {
        if j < i {
            j
        } else if j < i + k {
            i
        } else {
            j + 1 - k
        }
    };
    let groups = c
        .groups
        .iter()
        .map(|g| {
            let mut h: Vec<usize> = g.iter().map(|&j| map(j)).collect();
            h.dedup();
            h
        })
        .collect();
    ShallowCirquent { pool, groups }
}

fn and_intro(c: &ShallowCirquent, i: usize, k: usize) -> Result<ShallowCirquent, Cl5Error> {
    if k < 2 || i + k > c.pool.len() {
        return rule_err("bad conjunction span");
    }
    let which = |g: &Vec<usize>| -> Vec<usize> {
        g.iter()
            .filter(|&&j| j >= i && j < i + k)
            .map(|&j| j - i)
            .collect()
    };
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut n = 0;
    while n < c.groups.len() {
        let w = which(&c.groups[n]);
        match w.as_slice() {
            [] => {
                groups.push(c.groups[n].clone());
                n += 1;
            }
            [0] => {
                if n + k > c.groups.len() {
                    return rule_err("ogroup run for the conjunction is cut short");
                }
                let mut joined: Vec<usize> = Vec::new();
                for m in 0..k {
                    if which(&c.groups[n + m]) != vec![m] {
                        return rule_err("ogroups of the conjuncts are not in consecutive runs");
                    }
                    joined.extend(c.groups[n + m].iter().copied());
                }
                joined.sort();
                joined.dedup();
                groups.push(joined);
                n += k;
            }
            [_] => {
                return rule_err("ogroup of a later conjunct is not preceded by the earlier ones")
            }
            _ => return rule_err("an ogroup contains two conjuncts"),
        }
    }
    let tmp = ShallowCirquent {
        pool: c.pool.clone(),
        groups,
    };
    Ok(merge(&tmp, i, k, Formula::Pand(c.pool[i..i + k].to_vec())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cl5Step {
    pub cirquent: ShallowCirquent,
    pub rule: Cl5Rule,
    #[serde(default)]
    pub premises: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cl5Proof {
    pub system: SystemId,
    pub target: Formula,
    pub steps: Vec<Cl5Step>,
}

impl Cl5Proof {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Cl5Proof, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("step {step}: {reason}")]
pub struct Cl5CheckError {
    pub step: usize,
    pub reason: String,
}

/// Checks that every step follows from its premises by the rule it names
/// and that the last step is the singleton cirquent of the target.
pub fn check_proof(proof: &Cl5Proof) -> Result<(), Cl5CheckError> {
    let err = |step: usize, reason: String| Cl5CheckError { step, reason };
    if !matches!(proof.system, SystemId::Cl5 | SystemId::Ccc) {
        return Err(err(
            0,
            format!("{} is not a shallow cirquent system", proof.system),
        ));
    }
    let target = gate(&proof.target, proof.system).map_err(|e| err(0, e.to_string()))?;
    if proof.steps.is_empty() {
        return Err(err(0, "empty proof".into()));
    }
    for (n, step) in proof.steps.iter().enumerate() {
        step.cirquent
            .validate()
            .map_err(|e| err(n, e.to_string()))?;
        if matches!(step.rule, Cl5Rule::Contract { .. }) && proof.system != SystemId::Ccc {
            return Err(err(n, "contraction is not a cl5 rule".into()));
        }
        if let Some(&p) = step.premises.iter().find(|&&p| p >= n) {
            return Err(err(n, format!("premise {p} does not precede the step")));
        }
        let prem: Vec<&ShallowCirquent> = step
            .premises
            .iter()
            .map(|&p| &proof.steps[p].cirquent)
            .collect();
        let got = apply_forward(&prem, &step.rule).map_err(|e| err(n, e.to_string()))?;
        if got != step.cirquent {
            return Err(err(
                n,
                "the recorded cirquent is not the rule's conclusion".into(),
            ));
        }
    }
    if proof.steps.last().unwrap().cirquent != ShallowCirquent::singleton(target) {
        return Err(err(
            proof.steps.len() - 1,
            "the last step is not the target's singleton cirquent".into(),
        ));
    }
    Ok(())
}

/// Provability of `f`: classical validity for CCC, the normal-binary test
/// for CL5.
pub fn decide(f: &Formula, system: SystemId) -> Result<bool, Cl5Error> {
    let g = gate(f, system)?;
    match system {
        SystemId::Ccc => Ok(is_tautology(&g).expect("and/or formula")),
        SystemId::Cl5 => Ok(decide_binary(&g)),
        other => Err(Cl5Error::Rule(format!(
            "{other} is not a shallow cirquent system"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap().normalize()
    }

    #[test]
    fn and_intro_joins_runs() {
        let prem = ShallowCirquent::new(
            vec![f("P"), f("Q"), f("R")],
            vec![vec![0, 2], vec![1, 2], vec![2]],
        )
        .unwrap();
        let c = apply_forward(
            &[&prem],
            &Cl5Rule::AndIntro {
                oformula: 0,
                arity: 2,
            },
        )
        .unwrap();
        assert_eq!(
            c,
            ShallowCirquent::new(vec![f("P & Q"), f("R")], vec![vec![0, 1], vec![1]]).unwrap()
        );
        let bad = ShallowCirquent::new(vec![f("P"), f("Q")], vec![vec![1], vec![0]]).unwrap();
        assert!(apply_forward(
            &[&bad],
            &Cl5Rule::AndIntro {
                oformula: 0,
                arity: 2
            }
        )
        .is_err());
        let both = ShallowCirquent::new(vec![f("P"), f("Q")], vec![vec![0, 1]]).unwrap();
        assert!(apply_forward(
            &[&both],
            &Cl5Rule::AndIntro {
                oformula: 0,
                arity: 2
            }
        )
        .is_err());
    }

    #[test]
    fn or_intro_redirects_arcs() {
        let prem = ShallowCirquent::new(
            vec![f("P"), f("Q"), f("R")],
            vec![vec![0], vec![1, 2], vec![2]],
        )
        .unwrap();
        let c = apply_forward(
            &[&prem],
            &Cl5Rule::OrIntro {
                oformula: 0,
                arity: 2,
            },
        )
        .unwrap();
        assert_eq!(
            c,
            ShallowCirquent::new(vec![f("P | Q"), f("R")], vec![vec![0], vec![0, 1], vec![1]])
                .unwrap()
        );
    }

    #[test]
    fn decide_known_principles() {
        let blass = "((~P | ~Q) & (~R | ~S)) | ((P | R) & (Q | S))";
        assert!(decide(&parse(blass).unwrap(), SystemId::Cl5).unwrap());
        assert!(!decide(&parse("P -> P & P").unwrap(), SystemId::Cl5).unwrap());
        assert!(decide(&parse("P -> P & P").unwrap(), SystemId::Ccc).unwrap());
        assert!(decide(&parse("P & P -> P").unwrap(), SystemId::Cl5).unwrap());
    }
}
