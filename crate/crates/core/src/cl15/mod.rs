//! The recurrence cirquent system CL15: cirquents with undergroups and
//! overgroups, its ten rules read top-down and bottom-up, essential identity
//! and a bounded decision procedure.

mod canon;
mod dot;
mod premises;
mod search;

pub use canon::{canonical_key, canonical_key_with, CanonKey};
pub use dot::to_dot;
pub use premises::{enumerate_premises, RuleTag};
pub use search::{decide, Mode, SearchConfig, Verdict};

use crate::formula::Formula;
use crate::system::{gate, GateError, SystemId};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cirquent15 {
    pub oformulas: Vec<Formula>,
    pub undergroups: Vec<Vec<usize>>,
    pub overgroups: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Cl15Error {
    #[error("malformed cirquent: {0}")]
    Malformed(String),
    #[error("rule does not apply: {0}")]
    Rule(String),
    #[error(transparent)]
    Gate(#[from] GateError),
}

fn rule_err<T>(msg: impl Into<String>) -> Result<T, Cl15Error> {
    Err(Cl15Error::Rule(msg.into()))
}

fn check_groups(kind: &str, groups: &[Vec<usize>], n: usize) -> Result<(), Cl15Error> {
    if groups.is_empty() {
        return Err(Cl15Error::Malformed(format!("no {kind}")));
    }
    for g in groups {
        if g.is_empty() {
            return Err(Cl15Error::Malformed(format!("empty {kind}")));
        }
        if g.windows(2).any(|w| w[0] >= w[1]) || g.iter().any(|&i| i >= n) {
            return Err(Cl15Error::Malformed(format!(
                "{kind} {g:?} is not a sorted set of positions"
            )));
        }
    }
    Ok(())
}

fn shift_up(g: &[usize], at: usize) -> Vec<usize> {
    g.iter().map(|&j| if j >= at { j + 1 } else { j }).collect()
}

/// Drops position `at` (assumed absent or to be removed) and renumbers.
fn drop_position(g: &[usize], at: usize) -> Vec<usize> {
    g.iter()
        .filter(|&&j| j != at)
        .map(|&j| if j > at { j - 1 } else { j })
        .collect()
}

impl Cirquent15 {
    pub fn new(
        oformulas: Vec<Formula>,
        undergroups: Vec<Vec<usize>>,
        overgroups: Vec<Vec<usize>>,
    ) -> Result<Cirquent15, Cl15Error> {
        let c = Cirquent15 {
            oformulas,
            undergroups,
            overgroups,
        };
        c.validate()?;
        Ok(c)
    }

    /// `(⟨F⟩, ⟨{0}⟩, ⟨{0}⟩)` for the gated form of `f`.
    pub fn target(f: &Formula) -> Result<Cirquent15, Cl15Error> {
        let g = gate(f, SystemId::Cl15)?;
        Ok(Cirquent15 {
            oformulas: vec![g],
            undergroups: vec![vec![0]],
            overgroups: vec![vec![0]],
        })
    }

    pub fn validate(&self) -> Result<(), Cl15Error> {
        let n = self.oformulas.len();
        if n == 0 {
            return Err(Cl15Error::Malformed("no oformulas".into()));
        }
        check_groups("undergroup", &self.undergroups, n)?;
        check_groups("overgroup", &self.overgroups, n)?;
        for (i, f) in self.oformulas.iter().enumerate() {
            if !f.is_normal() {
                return Err(Cl15Error::Malformed(format!(
                    "oformula {f} is not normalized"
                )));
            }
            gate(f, SystemId::Cl15)?;
            if self.unders_of(i).is_empty() || self.overs_of(i).is_empty() {
                return Err(Cl15Error::Malformed(format!(
                    "oformula {i} lacks an undergroup or an overgroup"
                )));
            }
        }
        Ok(())
    }

    pub fn unders_of(&self, i: usize) -> Vec<usize> {
        (0..self.undergroups.len())
            .filter(|&u| self.undergroups[u].contains(&i))
            .collect()
    }

    pub fn overs_of(&self, i: usize) -> Vec<usize> {
        (0..self.overgroups.len())
            .filter(|&o| self.overgroups[o].contains(&i))
            .collect()
    }

    fn same_groups(&self, a: usize, b: usize) -> bool {
        self.undergroups
            .iter()
            .chain(&self.overgroups)
            .all(|g| g.contains(&a) == g.contains(&b))
    }

    /// Total number of recurrence operators over all oformulas.
    pub fn recurrence_complexity(&self) -> usize {
        self.oformulas
            .iter()
            .map(Formula::recurrence_complexity)
            .sum()
    }

    /// Replaces positions `i..i+k` by the single formula `f`; the members
    /// are assumed to be grouped alike or the groups are merged.
    fn merge_oformulas(&self, i: usize, k: usize, f: Formula) -> Cirquent15 {
        let map = |j: usize| {
            if j < i {
                j
            } else if j < i + k {
                i
            } else {
                j + 1 - k
            }
        };
        let remap = |gs: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
            gs.iter()
                .map(|g| {
                    let mut h: Vec<usize> = g.iter().map(|&j| map(j)).collect();
                    h.dedup();
                    h
                })
                .collect()
        };
        let mut oformulas = self.oformulas[..i].to_vec();
        oformulas.push(f);
        oformulas.extend(self.oformulas[i + k..].iter().cloned());
        Cirquent15 {
            oformulas,
            undergroups: remap(&self.undergroups),
            overgroups: remap(&self.overgroups),
        }
    }

    /// Replaces position `i` by `parts`, each placed in every group of `i`.
    fn split_oformula(&self, i: usize, parts: Vec<Formula>) -> Cirquent15 {
        let k = parts.len();
        let remap = |gs: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
            gs.iter()
                .map(|g| {
                    let mut h = Vec::new();
                    for &j in g {
                        match j.cmp(&i) {
                            std::cmp::Ordering::Less => h.push(j),
                            std::cmp::Ordering::Equal => h.extend(i..i + k),
                            std::cmp::Ordering::Greater => h.push(j + k - 1),
                        }
                    }
                    h
                })
                .collect()
        };
        let mut oformulas = self.oformulas[..i].to_vec();
        oformulas.extend(parts);
        oformulas.extend(self.oformulas[i + 1..].iter().cloned());
        Cirquent15 {
            oformulas,
            undergroups: remap(&self.undergroups),
            overgroups: remap(&self.overgroups),
        }
    }

    fn swap_oformulas(&self, i: usize) -> Cirquent15 {
        let mut c = self.clone();
        c.oformulas.swap(i, i + 1);
        let sw = |j: usize| {
            if j == i {
                i + 1
            } else if j == i + 1 {
                i
            } else {
                j
            }
        };
        for g in c.undergroups.iter_mut().chain(c.overgroups.iter_mut()) {
            for j in g.iter_mut() {
                *j = sw(*j);
            }
            g.sort();
        }
        c
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Cirquent15, Cl15Error> {
        let c: Cirquent15 =
            serde_json::from_value(v.clone()).map_err(|e| Cl15Error::Malformed(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }
}

/// Whether `c` is literally an Axiom conclusion: `⟨¬F₁, F₁, …, ¬Fₙ, Fₙ⟩`
/// with undergroups and overgroups both `⟨{0,1}, {2,3}, …⟩`. Since
/// oformulas are normalized, `⟨G, ¬G⟩` is the instance with `F = ¬G`.
pub fn axiom_match(c: &Cirquent15) -> bool {
    let n = c.oformulas.len();
    if n == 0 || n % 2 == 1 {
        return false;
    }
    let diamonds: Vec<Vec<usize>> = (0..n / 2).map(|k| vec![2 * k, 2 * k + 1]).collect();
    c.undergroups == diamonds
        && c.overgroups == diamonds
        && (0..n / 2).all(|k| c.oformulas[2 * k] == c.oformulas[2 * k + 1].negate())
}

/// The Axiom conclusion for `formulas`, one diamond `⟨¬F, F⟩` each.
pub fn axiom(formulas: &[Formula]) -> Cirquent15 {
    let mut oformulas = Vec::new();
    for f in formulas {
        oformulas.push(f.negate());
        oformulas.push(f.normalize());
    }
    let diamonds: Vec<Vec<usize>> = (0..formulas.len())
        .map(|k| vec![2 * k, 2 * k + 1])
        .collect();
    Cirquent15 {
        oformulas,
        undergroups: diamonds.clone(),
        overgroups: diamonds,
    }
}

/// Extra data of a Weakening step that introduces its oformula.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NewOformula {
    pub formula: Formula,
    /// Premise overgroups that also receive the new oformula.
    #[serde(default)]
    pub overgroups: Vec<usize>,
    /// Conclusion positions of new singleton overgroups `{F}`, ascending.
    #[serde(default)]
    pub new_overgroups: Vec<usize>,
}

/// Rule instances, read from premise to conclusion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "name", content = "params")]
pub enum Cl15Rule {
    #[serde(rename = "axiom", alias = "A")]
    Axiom,
    #[serde(rename = "E-under")]
    ExchangeUnder { i: usize },
    #[serde(rename = "E-oformula")]
    ExchangeOformula { i: usize },
    #[serde(rename = "E-over")]
    ExchangeOver { i: usize },
    /// Adds an arc from undergroup `under` to oformula `oformula`; with
    /// `new`, the oformula itself is inserted at that position.
    #[serde(rename = "W")]
    Weaken {
        under: usize,
        oformula: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        new: Option<NewOformula>,
    },
    /// Merges the adjacent copies at `i` and `i+1`.
    #[serde(rename = "C")]
    Contraction { i: usize },
    #[serde(rename = "D-under")]
    DuplicateUnder { i: usize },
    #[serde(rename = "D-over")]
    DuplicateOver { i: usize },
    /// Merges overgroups `i` and `i+1`.
    #[serde(rename = "M")]
    Merge { i: usize },
    #[serde(rename = "OrI")]
    OrIntro { i: usize, arity: usize },
    #[serde(rename = "AndI")]
    AndIntro { i: usize, arity: usize },
    /// Wraps oformula `oformula` in `○`, deleting its private overgroup.
    #[serde(rename = "RecI")]
    RecIntro { oformula: usize, overgroup: usize },
    /// Wraps oformula `oformula` in `⫰`, removing it from overgroups `drop`.
    #[serde(rename = "CorecI")]
    CorecIntro { oformula: usize, drop: Vec<usize> },
}

impl Cl15Rule {
    pub fn tag(&self) -> RuleTag {
        match self {
            Cl15Rule::Axiom => RuleTag::A,
            Cl15Rule::ExchangeUnder { .. } => RuleTag::EUnder,
            Cl15Rule::ExchangeOformula { .. } => RuleTag::EOformula,
            Cl15Rule::ExchangeOver { .. } => RuleTag::EOver,
            Cl15Rule::Weaken { .. } => RuleTag::W,
            Cl15Rule::Contraction { .. } => RuleTag::C,
            Cl15Rule::DuplicateUnder { .. } => RuleTag::DUnder,
            Cl15Rule::DuplicateOver { .. } => RuleTag::DOver,
            Cl15Rule::Merge { .. } => RuleTag::M,
            Cl15Rule::OrIntro { .. } => RuleTag::OrI,
            Cl15Rule::AndIntro { .. } => RuleTag::AndI,
            Cl15Rule::RecIntro { .. } => RuleTag::RecI,
            Cl15Rule::CorecIntro { .. } => RuleTag::CorecI,
        }
    }
}

/// Applies a non-axiom rule instance to `p`.
pub fn apply_forward(p: &Cirquent15, rule: &Cl15Rule) -> Result<Cirquent15, Cl15Error> {
    let n = p.oformulas.len();
    let out = match rule {
        Cl15Rule::Axiom => return rule_err("Axiom has no premise"),
        Cl15Rule::ExchangeOformula { i } => {
            if i + 1 >= n {
                return rule_err("no oformula to exchange with");
            }
            p.swap_oformulas(*i)
        }
        Cl15Rule::ExchangeUnder { i } => {
            if i + 1 >= p.undergroups.len() {
                return rule_err("no undergroup to exchange with");
            }
            let mut c = p.clone();
            c.undergroups.swap(*i, i + 1);
            c
        }
        Cl15Rule::ExchangeOver { i } => {
            if i + 1 >= p.overgroups.len() {
                return rule_err("no overgroup to exchange with");
            }
            let mut c = p.clone();
            c.overgroups.swap(*i, i + 1);
            c
        }
        Cl15Rule::Weaken {
            under,
            oformula,
            new,
        } => weaken(p, *under, *oformula, new.as_ref())?,
        Cl15Rule::Contraction { i } => {
            let i = *i;
            if i + 1 >= n || p.oformulas[i] != p.oformulas[i + 1] {
                return rule_err("oformulas are not adjacent copies");
            }
            if !matches!(p.oformulas[i], Formula::Cobrec(_)) {
                return rule_err("contracted oformula is not ⫰-rooted");
            }
            if !p.same_groups(i, i + 1) {
                return rule_err("copies are not in the same groups");
            }
            p.merge_oformulas(i, 2, p.oformulas[i].clone())
        }
        Cl15Rule::DuplicateUnder { i } => {
            let mut c = p.clone();
            let g = c
                .undergroups
                .get(*i)
                .ok_or(Cl15Error::Rule("no such undergroup".into()))?
                .clone();
            c.undergroups.insert(i + 1, g);
            c
        }
        Cl15Rule::DuplicateOver { i } => {
            let mut c = p.clone();
            let g = c
                .overgroups
                .get(*i)
                .ok_or(Cl15Error::Rule("no such overgroup".into()))?
                .clone();
            c.overgroups.insert(i + 1, g);
            c
        }
        Cl15Rule::Merge { i } => {
            if i + 1 >= p.overgroups.len() {
                return rule_err("no overgroup to merge with");
            }
            let mut c = p.clone();
            let b = c.overgroups.remove(i + 1);
            let a = &mut c.overgroups[*i];
            a.extend(b);
            a.sort();
            a.dedup();
            c
        }
        Cl15Rule::OrIntro { i, arity } => {
            let (i, k) = (*i, *arity);
            if k < 2 || i + k > n {
                return rule_err("bad disjunction span");
            }
            if !(i + 1..i + k).all(|j| p.same_groups(i, j)) {
                return rule_err("disjuncts are not in exactly the same groups");
            }
            p.merge_oformulas(i, k, Formula::Por(p.oformulas[i..i + k].to_vec()))
        }
        Cl15Rule::AndIntro { i, arity } => and_intro(p, *i, *arity)?,
        Cl15Rule::RecIntro {
            oformula,
            overgroup,
        } => {
            let (i, k) = (*oformula, *overgroup);
            if i >= n || k >= p.overgroups.len() {
                return rule_err("positions out of range");
            }
            if p.overgroups[k] != [i] {
                return rule_err("the overgroup is not private to the oformula");
            }
            if p.overs_of(i).len() < 2 {
                return rule_err("the oformula would be left without an overgroup");
            }
            let mut c = p.clone();
            c.overgroups.remove(k);
            c.oformulas[i] = Formula::brec(p.oformulas[i].clone());
            c
        }
        Cl15Rule::CorecIntro { oformula, drop } => {
            let i = *oformula;
            if i >= n {
                return rule_err("position out of range");
            }
            if drop.windows(2).any(|w| w[0] >= w[1]) {
                return rule_err("dropped overgroups are not a sorted set");
            }
            let mut c = p.clone();
            for &d in drop {
                let g = c
                    .overgroups
                    .get_mut(d)
                    .ok_or(Cl15Error::Rule("no such overgroup".into()))?;
                if !g.contains(&i) {
                    return rule_err(format!("overgroup {d} does not contain the oformula"));
                }
                if g.len() < 2 {
                    return rule_err(format!("overgroup {d} would become empty"));
                }
                g.retain(|&j| j != i);
            }
            if c.overs_of(i).is_empty() {
                return rule_err("the oformula would be left without an overgroup");
            }
            c.oformulas[i] = Formula::cobrec(p.oformulas[i].clone());
            c
        }
    };
    Ok(out)
}

fn weaken(
    p: &Cirquent15,
    u: usize,
    j: usize,
    new: Option<&NewOformula>,
) -> Result<Cirquent15, Cl15Error> {
    if u >= p.undergroups.len() {
        return rule_err("no such undergroup");
    }
    let Some(new) = new else {
        if j >= p.oformulas.len() {
            return rule_err("no such oformula");
        }
        if p.undergroups[u].contains(&j) {
            return rule_err("arc already present");
        }
        let mut c = p.clone();
        c.undergroups[u].push(j);
        c.undergroups[u].sort();
        return Ok(c);
    };
    if j > p.oformulas.len() {
        return rule_err("insertion point outside the oformulas");
    }
    if new.overgroups.is_empty() && new.new_overgroups.is_empty() {
        return rule_err("the new oformula needs an overgroup");
    }
    if new.overgroups.windows(2).any(|w| w[0] >= w[1])
        || new.new_overgroups.windows(2).any(|w| w[0] >= w[1])
    {
        return rule_err("overgroup lists are not sorted sets");
    }
    if new.overgroups.iter().any(|&o| o >= p.overgroups.len()) {
        return rule_err("no such overgroup");
    }
    let f = gate(&new.formula, SystemId::Cl15)?;
    let mut c = p.clone();
    c.oformulas.insert(j, f);
    c.undergroups = p.undergroups.iter().map(|g| shift_up(g, j)).collect();
    c.overgroups = p.overgroups.iter().map(|g| shift_up(g, j)).collect();
    c.undergroups[u].push(j);
    c.undergroups[u].sort();
    for &o in &new.overgroups {
        c.overgroups[o].push(j);
        c.overgroups[o].sort();
    }
    for &at in &new.new_overgroups {
        if at > c.overgroups.len() {
            return rule_err("new overgroup position out of range");
        }
        c.overgroups.insert(at, vec![j]);
    }
    Ok(c)
}

fn and_intro(p: &Cirquent15, i: usize, k: usize) -> Result<Cirquent15, Cl15Error> {
    if k < 2 || i + k > p.oformulas.len() {
        return rule_err("bad conjunction span");
    }
    if !p
        .overgroups
        .iter()
        .all(|g| (i..i + k).all(|j| g.contains(&j) == g.contains(&i)))
    {
        return rule_err("conjuncts are not in the same overgroups");
    }
    let which = |g: &Vec<usize>| -> Vec<usize> {
        g.iter()
            .filter(|&&j| j >= i && j < i + k)
            .map(|&j| j - i)
            .collect()
    };
    let rest = |g: &Vec<usize>| -> Vec<usize> {
        g.iter().copied().filter(|&j| j < i || j >= i + k).collect()
    };
    let mut undergroups = Vec::new();
    let mut n = 0;
    while n < p.undergroups.len() {
        let g = &p.undergroups[n];
        match which(g).as_slice() {
            [] => {
                undergroups.push(g.clone());
                n += 1;
            }
            [0] => {
                if n + k > p.undergroups.len() {
                    return rule_err("undergroup run for the conjunction is cut short");
                }
                let r = rest(g);
                for m in 1..k {
                    let h = &p.undergroups[n + m];
                    if which(h) != [m] || rest(h) != r {
                        return rule_err("undergroups of the conjuncts are not adjacent variants of one undergroup");
                    }
                }
                let mut joined = r;
                joined.push(i);
                joined.sort();
                undergroups.push(joined);
                n += k;
            }
            [_] => {
                return rule_err(
                    "undergroup of a later conjunct is not preceded by the earlier ones",
                )
            }
            _ => return rule_err("an undergroup contains two conjuncts"),
        }
    }
    // `joined` mentions only `i` of the span, so merging renumbers cleanly
    let tmp = Cirquent15 {
        oformulas: p.oformulas.clone(),
        undergroups,
        overgroups: p.overgroups.clone(),
    };
    Ok(tmp.merge_oformulas(i, k, Formula::Pand(p.oformulas[i..i + k].to_vec())))
}

mod rule_repr {
    use super::Cl15Rule;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(rule: &Cl15Rule, s: S) -> Result<S::Ok, S::Error> {
        match rule {
            Cl15Rule::Axiom => s.serialize_str("axiom"),
            other => other.serialize(s),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Cl15Rule, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v.as_str() {
            Some("axiom" | "A") => Ok(Cl15Rule::Axiom),
            Some(other) => Err(serde::de::Error::custom(format!("unknown rule `{other}`"))),
            None => serde_json::from_value(v).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cl15Step {
    pub cirquent: Cirquent15,
    #[serde(with = "rule_repr")]
    pub rule: Cl15Rule,
}

/// A linear proof: an Axiom conclusion followed by single-premise steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cl15Proof {
    pub system: SystemId,
    pub target: Formula,
    pub steps: Vec<Cl15Step>,
}

impl Cl15Proof {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Cl15Proof, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn count(&self, tag: RuleTag) -> usize {
        self.steps.iter().filter(|s| s.rule.tag() == tag).count()
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("step {step}: {reason}")]
pub struct Cl15CheckError {
    pub step: usize,
    pub reason: String,
}

pub fn check_proof(p: &Cl15Proof) -> Result<(), Cl15CheckError> {
    let err = |step: usize, reason: String| Cl15CheckError { step, reason };
    if p.system != SystemId::Cl15 {
        return Err(err(0, format!("{} is not cl15", p.system)));
    }
    let target = Cirquent15::target(&p.target).map_err(|e| err(0, e.to_string()))?;
    let Some(first) = p.steps.first() else {
        return Err(err(0, "empty proof".into()));
    };
    if first.rule != Cl15Rule::Axiom {
        return Err(err(0, "the first step is not an Axiom".into()));
    }
    first
        .cirquent
        .validate()
        .map_err(|e| err(0, e.to_string()))?;
    if !axiom_match(&first.cirquent) {
        return Err(err(
            0,
            "the first cirquent is not an Axiom conclusion".into(),
        ));
    }
    for n in 1..p.steps.len() {
        let step = &p.steps[n];
        if step.rule == Cl15Rule::Axiom {
            return Err(err(
                n,
                "Axiom has no premise and can only start a proof".into(),
            ));
        }
        step.cirquent
            .validate()
            .map_err(|e| err(n, e.to_string()))?;
        let got = apply_forward(&p.steps[n - 1].cirquent, &step.rule)
            .map_err(|e| err(n, e.to_string()))?;
        if got != step.cirquent {
            return Err(err(
                n,
                "the recorded cirquent is not the rule's conclusion".into(),
            ));
        }
    }
    if p.steps.last().unwrap().cirquent != target {
        return Err(err(
            p.steps.len() - 1,
            "the proof does not end at the target cirquent".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap().normalize()
    }

    fn cq(fs: &[&str], u: &[&[usize]], o: &[&[usize]]) -> Cirquent15 {
        Cirquent15::new(
            fs.iter().map(|s| f(s)).collect(),
            u.iter().map(|g| g.to_vec()).collect(),
            o.iter().map(|g| g.to_vec()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn axiom_shapes() {
        assert!(axiom_match(&cq(&["~F", "F"], &[&[0, 1]], &[&[0, 1]])));
        assert!(axiom_match(&axiom(&[f("F"), f("G"), f("!F")])));
        assert!(axiom_match(&cq(&["F", "~F"], &[&[0, 1]], &[&[0, 1]])));
        assert!(!axiom_match(&cq(&["~F", "F"], &[&[0, 1]], &[&[0], &[1]])));
        assert!(!axiom_match(&cq(&["~F", "G"], &[&[0, 1]], &[&[0, 1]])));
    }

    #[test]
    fn recurrence_rules() {
        let prem = cq(&["~F", "F"], &[&[0, 1]], &[&[0, 1], &[1]]);
        let c = apply_forward(
            &prem,
            &Cl15Rule::RecIntro {
                oformula: 1,
                overgroup: 1,
            },
        )
        .unwrap();
        assert_eq!(c, cq(&["~F", "!F"], &[&[0, 1]], &[&[0, 1]]));
        let solo = cq(&["F"], &[&[0]], &[&[0]]);
        assert!(apply_forward(
            &solo,
            &Cl15Rule::RecIntro {
                oformula: 0,
                overgroup: 0
            }
        )
        .is_err());
        let prem = cq(&["~F", "F"], &[&[0, 1]], &[&[0, 1], &[0, 1]]);
        let c = apply_forward(
            &prem,
            &Cl15Rule::CorecIntro {
                oformula: 0,
                drop: vec![1],
            },
        )
        .unwrap();
        assert_eq!(c, cq(&["?~F", "F"], &[&[0, 1]], &[&[0, 1], &[1]]));
    }

    #[test]
    fn contraction_needs_cobrecurrence() {
        let prem = cq(&["?F", "?F"], &[&[0, 1]], &[&[0, 1]]);
        let c = apply_forward(&prem, &Cl15Rule::Contraction { i: 0 }).unwrap();
        assert_eq!(c, cq(&["?F"], &[&[0]], &[&[0]]));
        let plain = cq(&["F", "F"], &[&[0, 1]], &[&[0, 1]]);
        assert!(apply_forward(&plain, &Cl15Rule::Contraction { i: 0 }).is_err());
    }

    #[test]
    fn and_intro_rebuilds_undergroups() {
        let prem = cq(&["~F", "G", "H"], &[&[0, 1], &[0, 2]], &[&[0, 1, 2]]);
        let c = apply_forward(&prem, &Cl15Rule::AndIntro { i: 1, arity: 2 }).unwrap();
        assert_eq!(c, cq(&["~F", "G & H"], &[&[0, 1]], &[&[0, 1]]));
        let uneven = cq(&["~F", "G", "H"], &[&[0, 1], &[2]], &[&[0, 1, 2]]);
        assert!(apply_forward(&uneven, &Cl15Rule::AndIntro { i: 1, arity: 2 }).is_err());
    }

    #[test]
    fn weakening_adds_oformula() {
        let prem = cq(&["~F", "F"], &[&[0, 1]], &[&[0, 1]]);
        let new = NewOformula {
            formula: f("G"),
            overgroups: vec![],
            new_overgroups: vec![1],
        };
        let c = apply_forward(
            &prem,
            &Cl15Rule::Weaken {
                under: 0,
                oformula: 2,
                new: Some(new),
            },
        )
        .unwrap();
        assert_eq!(c, cq(&["~F", "F", "G"], &[&[0, 1, 2]], &[&[0, 1], &[2]]));
    }

    #[test]
    fn exchange_is_an_involution() {
        let c = cq(&["~F", "F", "G"], &[&[0, 1, 2]], &[&[0, 2], &[1]]);
        let once = apply_forward(&c, &Cl15Rule::ExchangeOformula { i: 1 }).unwrap();
        assert_ne!(once, c);
        assert_eq!(
            apply_forward(&once, &Cl15Rule::ExchangeOformula { i: 1 }).unwrap(),
            c
        );
    }

    #[test]
    fn proof_json_uses_axiom_string() {
        let p = Cl15Proof {
            system: SystemId::Cl15,
            target: f("~F | F"),
            steps: vec![
                Cl15Step {
                    cirquent: axiom(&[f("F")]),
                    rule: Cl15Rule::Axiom,
                },
                Cl15Step {
                    cirquent: Cirquent15::target(&f("~F | F")).unwrap(),
                    rule: Cl15Rule::OrIntro { i: 0, arity: 2 },
                },
            ],
        };
        check_proof(&p).unwrap();
        let v: serde_json::Value = serde_json::from_str(&p.to_json()).unwrap();
        assert_eq!(v["steps"][0]["rule"], "axiom");
        assert_eq!(v["steps"][1]["rule"]["name"], "OrI");
        assert_eq!(Cl15Proof::from_json(&p.to_json()).unwrap(), p);
        let mut bad = p.clone();
        bad.steps.remove(0);
        assert!(check_proof(&bad).is_err());
    }
}
