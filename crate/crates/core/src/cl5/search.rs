//! Backward proof search for shallow cirquents.
//!
//! Compound oformulas are taken apart by the inverses of the introduction
//! rules, which preserve validity in both directions. Unattached oformulas,
//! repeated ogroups and separate components are dealt with eagerly. At the
//! literal level each ogroup is assigned one complementary pair; in CL5 the
//! pairs must be disjoint, which is exactly resource validity for literal
//! cirquents. Other arcs are dropped by weakening, and in CCC an oformula
//! shared by several pairs is split by contraction.

use super::{apply_forward, Cl5Error, Cl5Proof, Cl5Rule, Cl5Step, ShallowCirquent};
use crate::formula::Formula;
use crate::system::{gate, SystemId};
use std::collections::{HashMap, HashSet};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Cirquents visited before giving up.
    pub max_nodes: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_nodes: 200_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Cl5Proof),
    NotFound,
    Exhausted,
}

enum Fail {
    NotFound,
    Exhausted,
}

struct Search {
    system: SystemId,
    max_nodes: usize,
    nodes: usize,
    steps: Vec<Cl5Step>,
    index: HashMap<ShallowCirquent, usize>,
    failed: HashSet<ShallowCirquent>,
}

pub fn search_proof(
    f: &Formula,
    system: SystemId,
    cfg: &SearchConfig,
) -> Result<SearchOutcome, Cl5Error> {
    if !matches!(system, SystemId::Cl5 | SystemId::Ccc) {
        return Err(Cl5Error::Rule(format!(
            "{system} is not a shallow cirquent system"
        )));
    }
    let target = gate(f, system)?;
    let mut s = Search {
        system,
        max_nodes: cfg.max_nodes,
        nodes: 0,
        steps: Vec::new(),
        index: HashMap::new(),
        failed: HashSet::new(),
    };
    let goal = ShallowCirquent::singleton(target);
    match s.prove(&goal) {
        Ok(n) => {
            debug_assert_eq!(n, s.steps.len() - 1);
            Ok(SearchOutcome::Found(Cl5Proof {
                system,
                target: f.clone(),
                steps: s.steps,
            }))
        }
        Err(Fail::NotFound) => Ok(SearchOutcome::NotFound),
        Err(Fail::Exhausted) => Ok(SearchOutcome::Exhausted),
    }
}

impl Search {
    fn add(&mut self, rule: Cl5Rule, premises: Vec<usize>) -> usize {
        let prem: Vec<&ShallowCirquent> =
            premises.iter().map(|&p| &self.steps[p].cirquent).collect();
        let cirquent = apply_forward(&prem, &rule).expect("search emits applicable rules");
        if let Some(&n) = self.index.get(&cirquent) {
            return n;
        }
        self.index.insert(cirquent.clone(), self.steps.len());
        self.steps.push(Cl5Step {
            cirquent,
            rule,
            premises,
        });
        self.steps.len() - 1
    }

    fn prove(&mut self, c: &ShallowCirquent) -> Result<usize, Fail> {
        if let Some(&n) = self.index.get(c) {
            return Ok(n);
        }
        if self.failed.contains(c) {
            return Err(Fail::NotFound);
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Fail::Exhausted);
        }
        let r = self.prove_new(c);
        match &r {
            Ok(n) => assert_eq!(&self.steps[*n].cirquent, c, "derivation ends elsewhere"),
            Err(Fail::NotFound) => {
                self.failed.insert(c.clone());
            }
            Err(Fail::Exhausted) => {}
        }
        r
    }

    fn prove_new(&mut self, c: &ShallowCirquent) -> Result<usize, Fail> {
        if c.pool.is_empty() && c.groups.is_empty() {
            return Ok(self.add(Cl5Rule::AxiomEmpty, vec![]));
        }
        if c.groups.iter().any(|g| g.is_empty()) {
            return Err(Fail::NotFound);
        }
        // unattached oformulas
        if let Some(i) = (0..c.pool.len()).find(|&i| c.groups.iter().all(|g| !g.contains(&i))) {
            let p = self.prove(&c.without_oformula(i))?;
            return Ok(self.add(
                Cl5Rule::WeakenPool {
                    at: i,
                    formula: c.pool[i].clone(),
                },
                vec![p],
            ));
        }
        // repeated ogroups
        for j in 1..c.groups.len() {
            if let Some(i) = (0..j).find(|&i| c.groups[i] == c.groups[j]) {
                let mut prem = c.clone();
                prem.groups.remove(j);
                let mut n = self.prove(&prem)?;
                n = self.add(Cl5Rule::DuplicateDown { group: i }, vec![n]);
                for k in i + 1..j {
                    n = self.add(Cl5Rule::ExchangeOgroup { i: k }, vec![n]);
                }
                return Ok(n);
            }
        }
        if let Some(n) = self.split_components(c)? {
            return Ok(n);
        }
        if let Some(i) = c.pool.iter().position(|f| !f.is_literal()) {
            return self.decompose(c, i);
        }
        self.literal_level(c)
    }

    /// Mix of the component holding oformula 0 with the rest.
    fn split_components(&mut self, c: &ShallowCirquent) -> Result<Option<usize>, Fail> {
        let mut in_a = vec![false; c.pool.len()];
        let mut group_a = vec![false; c.groups.len()];
        in_a[0] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for (g, members) in c.groups.iter().enumerate() {
                if !group_a[g] && members.iter().any(|&i| in_a[i]) {
                    group_a[g] = true;
                    changed = true;
                    for &i in members {
                        in_a[i] = true;
                    }
                }
            }
        }
        if in_a.iter().all(|&b| b) {
            return Ok(None);
        }
        let part = |keep: bool| -> (ShallowCirquent, Vec<usize>, Vec<usize>) {
            let pool_idx: Vec<usize> = (0..c.pool.len()).filter(|&i| in_a[i] == keep).collect();
            let group_idx: Vec<usize> = (0..c.groups.len())
                .filter(|&g| group_a[g] == keep)
                .collect();
            let renum = |i: usize| {
                pool_idx
                    .iter()
                    .position(|&j| j == i)
                    .expect("same component")
            };
            let sub = ShallowCirquent {
                pool: pool_idx.iter().map(|&i| c.pool[i].clone()).collect(),
                groups: group_idx
                    .iter()
                    .map(|&g| c.groups[g].iter().map(|&i| renum(i)).collect())
                    .collect(),
            };
            (sub, pool_idx, group_idx)
        };
        let (a, pa, ga) = part(true);
        let (b, pb, gb) = part(false);
        let na = self.prove(&a)?;
        let nb = self.prove(&b)?;
        let mut n = self.add(Cl5Rule::Mix, vec![na, nb]);
        let mut pool_order: Vec<usize> = pa.into_iter().chain(pb).collect();
        let mut group_order: Vec<usize> = ga.into_iter().chain(gb).collect();
        n = self.sort_by_exchange(n, &mut pool_order, true);
        n = self.sort_by_exchange(n, &mut group_order, false);
        Ok(Some(n))
    }

    /// Bubble sort of `order` (target positions) by adjacent exchanges.
    fn sort_by_exchange(&mut self, mut n: usize, order: &mut [usize], pool: bool) -> usize {
        loop {
            let Some(k) = (0..order.len().saturating_sub(1)).find(|&k| order[k] > order[k + 1])
            else {
                return n;
            };
            order.swap(k, k + 1);
            let rule = if pool {
                Cl5Rule::ExchangeOformula { i: k }
            } else {
                Cl5Rule::ExchangeOgroup { i: k }
            };
            n = self.add(rule, vec![n]);
        }
    }

    fn decompose(&mut self, c: &ShallowCirquent, i: usize) -> Result<usize, Fail> {
        let (parts, conj) = match &c.pool[i] {
            Formula::Por(v) => (v.clone(), false),
            Formula::Pand(v) => (v.clone(), true),
            _ => unreachable!("validated cirquent"),
        };
        let k = parts.len();
        let mut pool = c.pool[..i].to_vec();
        pool.extend(parts);
        pool.extend(c.pool[i + 1..].iter().cloned());
        let shift = |j: usize| if j > i { j + k - 1 } else { j };
        let mut groups = Vec::new();
        for g in &c.groups {
            let rest: Vec<usize> = g.iter().filter(|&&j| j != i).map(|&j| shift(j)).collect();
            if !g.contains(&i) {
                groups.push(rest);
            } else if conj {
                for m in 0..k {
                    let mut h = rest.clone();
                    h.push(i + m);
                    h.sort();
                    groups.push(h);
                }
            } else {
                let mut h = rest;
                h.extend(i..i + k);
                h.sort();
                groups.push(h);
            }
        }
        let p = self.prove(&ShallowCirquent { pool, groups })?;
        let rule = if conj {
            Cl5Rule::AndIntro {
                oformula: i,
                arity: k,
            }
        } else {
            Cl5Rule::OrIntro {
                oformula: i,
                arity: k,
            }
        };
        Ok(self.add(rule, vec![p]))
    }

    fn literal_level(&mut self, c: &ShallowCirquent) -> Result<usize, Fail> {
        if c.pool.len() == 2 && c.groups == [vec![0, 1]] && c.pool[0] == c.pool[1].negate() {
            return Ok(self.add(
                Cl5Rule::AxiomIdentity {
                    formula: c.pool[1].clone(),
                },
                vec![],
            ));
        }
        let Some(choice) = choose_pairs(c, self.system == SystemId::Cl5) else {
            return Err(Fail::NotFound);
        };
        for (g, &(a, b)) in choice.iter().enumerate() {
            if let Some(&o) = c.groups[g].iter().find(|&&o| o != a && o != b) {
                let mut prem = c.clone();
                prem.groups[g].retain(|&x| x != o);
                let p = self.prove(&prem)?;
                return Ok(self.add(
                    Cl5Rule::WeakenOgroup {
                        group: g,
                        oformula: o,
                    },
                    vec![p],
                ));
            }
        }
        // every ogroup is a distinct pair and the cirquent is connected, so
        // some oformula is shared; only contraction can separate it
        if self.system != SystemId::Ccc {
            return Err(Fail::NotFound);
        }
        let o = (0..c.pool.len())
            .find(|&o| c.groups_containing(o).len() > 1)
            .ok_or(Fail::NotFound)?;
        let first = c.groups_containing(o)[0];
        let mut prem = c.with_oformula(o + 1, c.pool[o].clone());
        for (g, members) in prem.groups.iter_mut().enumerate() {
            if g != first && members.contains(&o) {
                members.retain(|&x| x != o);
                members.push(o + 1);
                members.sort();
            }
        }
        let p = self.prove(&prem)?;
        Ok(self.add(Cl5Rule::Contract { oformula: o }, vec![p]))
    }
}

/// One complementary pair per ogroup, pairwise disjoint or equal if `disjoint`.
fn choose_pairs(c: &ShallowCirquent, disjoint: bool) -> Option<Vec<(usize, usize)>> {
    fn go(
        c: &ShallowCirquent,
        g: usize,
        partner: &mut Vec<Option<usize>>,
        out: &mut Vec<(usize, usize)>,
        disjoint: bool,
    ) -> bool {
        if g == c.groups.len() {
            return true;
        }
        let members = &c.groups[g];
        for (x, &a) in members.iter().enumerate() {
            for &b in &members[x + 1..] {
                if c.pool[a] != c.pool[b].negate() {
                    continue;
                }
                let fits = !disjoint
                    || (partner[a].is_none_or(|p| p == b) && partner[b].is_none_or(|p| p == a));
                if !fits {
                    continue;
                }
                let saved = (partner[a], partner[b]);
                partner[a] = Some(b);
                partner[b] = Some(a);
                out.push((a, b));
                if go(c, g + 1, partner, out, disjoint) {
                    return true;
                }
                out.pop();
                partner[a] = saved.0;
                partner[b] = saved.1;
                if !disjoint {
                    return false;
                }
            }
        }
        false
    }
    let mut partner = vec![None; c.pool.len()];
    let mut out = Vec::new();
    go(c, 0, &mut partner, &mut out, disjoint).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cl5::check_proof;
    use crate::formula::parse;

    fn run(src: &str, system: SystemId) -> SearchOutcome {
        search_proof(&parse(src).unwrap(), system, &SearchConfig::default()).unwrap()
    }

    #[test]
    fn finds_checkable_proofs() {
        for (src, sys) in [
            ("~P | P", SystemId::Cl5),
            ("P & Q -> P", SystemId::Cl5),
            ("P -> P & P", SystemId::Ccc),
            (
                "((~P | ~Q) & (~R | ~S)) | ((P | R) & (Q | S))",
                SystemId::Cl5,
            ),
            (
                "(P | Q) & (R | S) -> (P & R) | (P & S) | (Q & R) | (Q & S)",
                SystemId::Ccc,
            ),
        ] {
            match run(src, sys) {
                SearchOutcome::Found(p) => check_proof(&p).unwrap_or_else(|e| panic!("{src}: {e}")),
                other => panic!("{src}: {other:?}"),
            }
        }
    }

    #[test]
    fn rejects_invalid() {
        assert_eq!(run("P -> P & P", SystemId::Cl5), SearchOutcome::NotFound);
        assert_eq!(run("P | Q", SystemId::Ccc), SearchOutcome::NotFound);
    }
}
