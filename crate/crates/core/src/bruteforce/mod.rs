//! Decision procedure and proof checker for the choice fragments CL1 and
//! CL2, with winning strategies read off the proofs.

mod strategy;

pub use strategy::ProofStrategy;

use crate::formula::{is_stable, surface_sites, Atom, Formula};
use crate::system::{gate, GateError, SystemId};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BfRule {
    R1,
    R2,
    R3,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDetail {
    /// Site of the `⊔` resolved by R2.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
    /// Sites of the positive and negative general literal replaced by R3.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positive: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub negative: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fresh: Option<Atom>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BfStep {
    pub formula: Formula,
    pub rule: BfRule,
    pub premises: Vec<usize>,
    #[serde(default)]
    pub detail: StepDetail,
}

/// A proof as a list of steps; premises always refer to earlier steps and
/// the last step proves the (normalized) target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BfProof {
    pub system: SystemId,
    pub target: Formula,
    pub steps: Vec<BfStep>,
}

impl BfProof {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<BfProof, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Provable(BfProof),
    Unprovable,
    /// The node budget ran out before the search finished.
    ResourceExhausted {
        nodes: usize,
    },
}

impl Outcome {
    pub fn is_provable(&self) -> bool {
        matches!(self, Outcome::Provable(_))
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BfError {
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error("the brute-force prover handles cl1 and cl2, not {0}")]
    System(SystemId),
}

/// Premises of Rule 1, or `None` when `f` is not stable. The premises are
/// `f` with one surface `⊓` replaced by one of its components, for every
/// such occurrence and component, without repetitions.
pub fn rule1_premises(f: &Formula) -> Option<Vec<Formula>> {
    if !is_stable(f).ok()? {
        return None;
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for site in surface_sites(f, &|g| matches!(g, Formula::Chand(_))) {
        if !site.surface {
            continue;
        }
        let Formula::Chand(args) = &site.subformula else {
            unreachable!()
        };
        for a in args {
            let g = f.replace_at(&site.path, a.clone());
            if seen.insert(g.clone()) {
                out.push(g);
            }
        }
    }
    Some(out)
}

/// Rule 2 premises: one surface `⊔` replaced by one of its components.
pub fn rule2_premises(f: &Formula) -> Vec<(Vec<usize>, usize, Formula)> {
    let mut out = Vec::new();
    for site in surface_sites(f, &|g| matches!(g, Formula::Chor(_))) {
        if !site.surface {
            continue;
        }
        let Formula::Chor(args) = &site.subformula else {
            unreachable!()
        };
        for (i, a) in args.iter().enumerate() {
            out.push((site.path.clone(), i, f.replace_at(&site.path, a.clone())));
        }
    }
    out
}

/// The fresh elementary atom R3 introduces into `f`: the first `pN` not
/// already in it.
pub fn fresh_atom(f: &Formula) -> Atom {
    let used = f.atoms();
    (1..)
        .map(|k| Atom::new(&format!("p{k}")))
        .find(|a| !used.contains(a))
        .unwrap()
}

/// Rule 3 premises: a surface `P` and a surface `¬P` replaced by `p` and
/// `¬p` for a fresh elementary `p`. Listed by negative occurrence, then by
/// positive occurrence.
pub fn rule3_premises(f: &Formula) -> Vec<(Vec<usize>, Vec<usize>, Atom, Formula)> {
    let lits = surface_sites(
        f,
        &|g| matches!(g, Formula::Lit { atom, .. } if !atom.is_elementary()),
    );
    let lits: Vec<_> = lits.into_iter().filter(|s| s.surface).collect();
    let fresh = fresh_atom(f);
    let mut out = Vec::new();
    for neg in &lits {
        let Formula::Lit {
            atom: a,
            negated: true,
        } = &neg.subformula
        else {
            continue;
        };
        for pos in &lits {
            let Formula::Lit {
                atom: b,
                negated: false,
            } = &pos.subformula
            else {
                continue;
            };
            if a != b {
                continue;
            }
            let g = f
                .replace_at(&pos.path, Formula::lit(fresh.clone(), false))
                .replace_at(&neg.path, Formula::lit(fresh.clone(), true));
            out.push((pos.path.clone(), neg.path.clone(), fresh.clone(), g));
        }
    }
    out
}

struct Found {
    rule: BfRule,
    premises: Vec<Formula>,
    detail: StepDetail,
}

struct Search {
    system: SystemId,
    memo: HashMap<Formula, Option<Found>>,
    budget: usize,
}

struct Exhausted;

impl Search {
    fn prove(&mut self, f: &Formula) -> Result<bool, Exhausted> {
        if let Some(r) = self.memo.get(f) {
            return Ok(r.is_some());
        }
        if self.memo.len() >= self.budget {
            return Err(Exhausted);
        }
        let found = self.search(f)?;
        let ok = found.is_some();
        self.memo.insert(f.clone(), found);
        Ok(ok)
    }

    fn search(&mut self, f: &Formula) -> Result<Option<Found>, Exhausted> {
        if let Some(prem) = rule1_premises(f) {
            let mut all = true;
            for p in &prem {
                if !self.prove(p)? {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(Some(Found {
                    rule: BfRule::R1,
                    premises: prem,
                    detail: StepDetail::default(),
                }));
            }
        }
        for (path, i, g) in rule2_premises(f) {
            if self.prove(&g)? {
                let detail = StepDetail {
                    path: Some(path),
                    component: Some(i),
                    ..Default::default()
                };
                return Ok(Some(Found {
                    rule: BfRule::R2,
                    premises: vec![g],
                    detail,
                }));
            }
        }
        if self.system == SystemId::Cl2 {
            for (pos, neg, fresh, g) in rule3_premises(f) {
                if self.prove(&g)? {
                    let detail = StepDetail {
                        positive: Some(pos),
                        negative: Some(neg),
                        fresh: Some(fresh),
                        ..Default::default()
                    };
                    return Ok(Some(Found {
                        rule: BfRule::R3,
                        premises: vec![g],
                        detail,
                    }));
                }
            }
        }
        Ok(None)
    }

    fn emit(
        &self,
        f: &Formula,
        index: &mut HashMap<Formula, usize>,
        steps: &mut Vec<BfStep>,
    ) -> usize {
        if let Some(&i) = index.get(f) {
            return i;
        }
        let found = self.memo[f].as_ref().expect("proved");
        let premises = found
            .premises
            .iter()
            .map(|p| self.emit(p, index, steps))
            .collect();
        steps.push(BfStep {
            formula: f.clone(),
            rule: found.rule,
            premises,
            detail: found.detail.clone(),
        });
        index.insert(f.clone(), steps.len() - 1);
        steps.len() - 1
    }
}

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Decides `f` in CL1 or CL2. Rules are tried in the order R1, R2 (sites
/// left to right), R3, and every formula is examined at most once.
pub fn decide(f: &Formula, system: SystemId, budget: usize) -> Result<Outcome, BfError> {
    if !matches!(system, SystemId::Cl1 | SystemId::Cl2) {
        return Err(BfError::System(system));
    }
    let g = gate(f, system)?;
    let mut s = Search {
        system,
        memo: HashMap::new(),
        budget,
    };
    match s.prove(&g) {
        Err(Exhausted) => Ok(Outcome::ResourceExhausted {
            nodes: s.memo.len(),
        }),
        Ok(false) => Ok(Outcome::Unprovable),
        Ok(true) => {
            let mut steps = Vec::new();
            s.emit(&g, &mut HashMap::new(), &mut steps);
            Ok(Outcome::Provable(BfProof {
                system,
                target: f.clone(),
                steps,
            }))
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("step {step}: {reason}")]
pub struct CheckError {
    pub step: usize,
    pub reason: String,
}

/// Verifies every step of `proof` against the rule it cites.
pub fn check_proof(proof: &BfProof) -> Result<(), CheckError> {
    let err = |step: usize, reason: String| CheckError { step, reason };
    if !matches!(proof.system, SystemId::Cl1 | SystemId::Cl2) {
        return Err(err(
            0,
            format!("system {} is not a choice fragment", proof.system),
        ));
    }
    let target = gate(&proof.target, proof.system).map_err(|e| err(0, e.to_string()))?;
    if proof.steps.is_empty() {
        return Err(err(0, "empty proof".into()));
    }
    for (i, step) in proof.steps.iter().enumerate() {
        let f = &step.formula;
        gate(f, proof.system).map_err(|e| err(i, e.to_string()))?;
        if !f.is_normal() {
            return Err(err(i, "formula is not in negation normal form".into()));
        }
        if let Some(&p) = step.premises.iter().find(|&&p| p >= i) {
            return Err(err(i, format!("premise {p} does not precede the step")));
        }
        let prem: Vec<&Formula> = step
            .premises
            .iter()
            .map(|&p| &proof.steps[p].formula)
            .collect();
        match step.rule {
            BfRule::R1 => {
                let want = rule1_premises(f).ok_or_else(|| err(i, format!("{f} is not stable")))?;
                let want: BTreeSet<&Formula> = want.iter().collect();
                let got: BTreeSet<&Formula> = prem.iter().copied().collect();
                if got.len() != prem.len() {
                    return Err(err(i, "repeated premise".into()));
                }
                if want != got {
                    return Err(err(
                        i,
                        "premises are not exactly the Rule 1 premises".into(),
                    ));
                }
            }
            BfRule::R2 => {
                let [p] = prem[..] else {
                    return Err(err(i, "R2 takes one premise".into()));
                };
                let ok = rule2_premises(f).into_iter().any(|(path, c, g)| {
                    &g == p
                        && step.detail.path.as_ref().is_none_or(|q| q == &path)
                        && step.detail.component.is_none_or(|k| k == c)
                });
                if !ok {
                    return Err(err(
                        i,
                        "premise does not resolve a surface choice disjunction".into(),
                    ));
                }
            }
            BfRule::R3 => {
                if proof.system != SystemId::Cl2 {
                    return Err(err(i, "R3 is a cl2 rule".into()));
                }
                let [p] = prem[..] else {
                    return Err(err(i, "R3 takes one premise".into()));
                };
                let fresh = match &step.detail.fresh {
                    Some(a) => a.clone(),
                    None => p
                        .atoms()
                        .difference(&f.atoms())
                        .next()
                        .cloned()
                        .unwrap_or_else(|| fresh_atom(f)),
                };
                if !fresh.is_elementary() || f.atoms().contains(&fresh) {
                    return Err(err(i, format!("{fresh} is not a fresh elementary atom")));
                }
                let lits = surface_sites(
                    f,
                    &|g| matches!(g, Formula::Lit { atom, .. } if !atom.is_elementary()),
                );
                let lits: Vec<_> = lits.into_iter().filter(|s| s.surface).collect();
                let ok = lits.iter().any(|neg| {
                    lits.iter().any(|pos| {
                        let (
                            Formula::Lit {
                                atom: a,
                                negated: true,
                            },
                            Formula::Lit {
                                atom: b,
                                negated: false,
                            },
                        ) = (&neg.subformula, &pos.subformula)
                        else {
                            return false;
                        };
                        a == b
                            && step.detail.positive.as_ref().is_none_or(|q| q == &pos.path)
                            && step.detail.negative.as_ref().is_none_or(|q| q == &neg.path)
                            && &f
                                .replace_at(&pos.path, Formula::lit(fresh.clone(), false))
                                .replace_at(&neg.path, Formula::lit(fresh.clone(), true))
                                == p
                    })
                });
                if !ok {
                    return Err(err(i, "premise does not match a literal pairing".into()));
                }
            }
        }
    }
    if proof.steps.last().unwrap().formula != target {
        return Err(err(
            proof.steps.len() - 1,
            "the last step does not prove the target".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn proof_of(src: &str, system: SystemId) -> BfProof {
        match decide(&parse(src).unwrap(), system, DEFAULT_BUDGET).unwrap() {
            Outcome::Provable(p) => p,
            other => panic!("{src}: {other:?}"),
        }
    }

    #[test]
    fn worked_cl1_proof() {
        let p = proof_of("((p -> q) * (p -> r)) -> (p -> (q * r))", SystemId::Cl1);
        let rules: Vec<BfRule> = p.steps.iter().map(|s| s.rule).collect();
        use BfRule::*;
        assert_eq!(rules, vec![R1, R2, R1, R2, R1]);
        let expected = [
            "(p -> q) -> (p -> q)",
            "((p -> q) * (p -> r)) -> (p -> q)",
            "(p -> r) -> (p -> r)",
            "((p -> q) * (p -> r)) -> (p -> r)",
            "((p -> q) * (p -> r)) -> (p -> (q * r))",
        ];
        for (s, e) in p.steps.iter().zip(expected) {
            assert_eq!(s.formula, parse(e).unwrap().normalize());
        }
        assert_eq!(p.steps[4].premises, vec![1, 3]);
        assert!(check_proof(&p).is_ok());
    }

    #[test]
    fn worked_cl2_proofs() {
        let p = proof_of("P & P -> P", SystemId::Cl2);
        assert_eq!(p.steps.len(), 2);
        assert_eq!(
            p.steps[0].formula,
            parse("p1 & P -> p1").unwrap().normalize()
        );
        assert_eq!((p.steps[0].rule, p.steps[1].rule), (BfRule::R1, BfRule::R3));
        assert!(check_proof(&p).is_ok());
        let e = elementarise_text("p1 & P -> p1");
        assert_eq!(e, "(~p1 | 0) | p1");
        assert!(matches!(
            decide(&parse("P -> P & P").unwrap(), SystemId::Cl2, DEFAULT_BUDGET).unwrap(),
            Outcome::Unprovable
        ));
    }

    fn elementarise_text(src: &str) -> String {
        crate::formula::elementarise(&parse(src).unwrap().normalize())
            .unwrap()
            .ascii()
    }

    #[test]
    fn checker_rejects_tampering() {
        let mut p = proof_of("((p -> q) * (p -> r)) -> (p -> (q * r))", SystemId::Cl1);
        p.steps[4].premises = vec![1];
        assert!(check_proof(&p).is_err());
        let mut p = proof_of("P & P -> P", SystemId::Cl2);
        p.system = SystemId::Cl1;
        assert!(check_proof(&p).is_err());
        let mut p = proof_of("p + ~p | p", SystemId::Cl1);
        p.steps[0].formula = parse("p | ~p").unwrap();
        assert!(check_proof(&p).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = proof_of("P & P -> P", SystemId::Cl2);
        let back = BfProof::from_json(&p.to_json()).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn budget_exhaustion() {
        let f = parse("(p * q * r) -> ((p + q) * (q + r) * (r + p))").unwrap();
        assert!(matches!(
            decide(&f, SystemId::Cl1, 2).unwrap(),
            Outcome::ResourceExhausted { .. }
        ));
    }
}
