//! Bottom-up search for CL15 proofs.
//!
//! Disjunction, conjunction and recurrence introduction are invertible and
//! applied as soon as they match, as is the removal of a repeated group.
//! The remaining choices are how to take apart the first `⫰` oformula
//! (which overgroups its body joins, or a Contraction first) and, once only
//! literals are left, which undergroup arcs to drop and how to split
//! overgroups. Contractions are rationed per branch, and the budget is
//! raised one at a time so the first proof found uses as few as possible.

use super::canon::{canonical_key_with, CanonKey};
use super::premises::{and_inverse, corec_inverse, or_inverse, rec_inverse, weaken_inverse};
use super::{apply_forward, Cirquent15, Cl15Error, Cl15Proof, Cl15Rule, Cl15Step};
use crate::formula::Formula;
use crate::system::SystemId;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// No Contraction at all.
    Cl15c,
    /// At most `contraction_budget` Contractions per branch.
    Bounded,
    /// As `Bounded`, and branches longer than `max_proof_length` or wider
    /// than `max_oformulas` are cut, which makes a failure inconclusive.
    DepthLimited,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub contraction_budget: usize,
    pub max_nodes: usize,
    pub max_proof_length: usize,
    pub max_oformulas: usize,
    pub mode: Mode,
    /// Identify oformulas up to the order of `∧`/`∨` arguments when
    /// recognising repeated cirquents on a branch.
    #[serde(default)]
    pub commutative_identity: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            contraction_budget: 1,
            max_nodes: 1_000_000,
            max_proof_length: 64,
            max_oformulas: 32,
            mode: Mode::Bounded,
            commutative_identity: false,
        }
    }
}

impl SearchConfig {
    pub fn effective_budget(&self) -> usize {
        if self.mode == Mode::Cl15c {
            0
        } else {
            self.contraction_budget
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Provable(Cl15Proof),
    /// The search space under these bounds holds no proof.
    Unprovable {
        contraction_budget: usize,
        max_nodes: usize,
    },
    ResourceExhausted {
        nodes: usize,
    },
}

/// A bottom-up move: a premise and the instance taking it down.
type Move = (Cirquent15, Cl15Rule);

struct Stop;

struct Search<'a> {
    cfg: &'a SearchConfig,
    nodes: usize,
    branch: HashSet<CanonKey>,
    failed: HashSet<(CanonKey, usize, usize)>,
    /// Bumped whenever a premise is cut for repeating its branch or for
    /// crossing a depth-limited bound; failures below such a cut are not
    /// recorded as final.
    cuts: usize,
    limit_hit: bool,
}

/// Runs the search; also returns the number of cirquents visited.
pub fn decide(f: &Formula, cfg: &SearchConfig) -> Result<(Verdict, usize), Cl15Error> {
    let target = Cirquent15::target(f)?;
    let mut s = Search {
        cfg,
        nodes: 0,
        branch: HashSet::new(),
        failed: HashSet::new(),
        cuts: 0,
        limit_hit: false,
    };
    let budget = cfg.effective_budget();
    for k in 0..=budget {
        s.branch.clear();
        match s.node(&target, k, 0) {
            Err(Stop) => return Ok((Verdict::ResourceExhausted { nodes: s.nodes }, s.nodes)),
            Ok(Some(moves)) => return Ok((Verdict::Provable(emit(f, &target, moves)), s.nodes)),
            Ok(None) => {}
        }
    }
    if s.limit_hit {
        return Ok((Verdict::ResourceExhausted { nodes: s.nodes }, s.nodes));
    }
    Ok((
        Verdict::Unprovable {
            contraction_budget: budget,
            max_nodes: cfg.max_nodes,
        },
        s.nodes,
    ))
}

fn emit(f: &Formula, target: &Cirquent15, moves: Vec<Move>) -> Cl15Proof {
    let top = moves.last().map_or(target, |m| &m.0).clone();
    let mut steps = vec![Cl15Step {
        cirquent: top,
        rule: Cl15Rule::Axiom,
    }];
    for k in (0..moves.len()).rev() {
        let conclusion = if k == 0 {
            target.clone()
        } else {
            moves[k - 1].0.clone()
        };
        debug_assert_eq!(
            apply_forward(&moves[k].0, &moves[k].1).as_ref(),
            Ok(&conclusion)
        );
        steps.push(Cl15Step {
            cirquent: conclusion,
            rule: moves[k].1.clone(),
        });
    }
    Cl15Proof {
        system: SystemId::Cl15,
        target: f.clone(),
        steps,
    }
}

impl Search<'_> {
    fn node(
        &mut self,
        c: &Cirquent15,
        budget: usize,
        depth: usize,
    ) -> Result<Option<Vec<Move>>, Stop> {
        self.nodes += 1;
        if self.nodes > self.cfg.max_nodes {
            return Err(Stop);
        }
        let limited = self.cfg.mode == Mode::DepthLimited;
        if limited
            && (depth > self.cfg.max_proof_length || c.oformulas.len() > self.cfg.max_oformulas)
        {
            self.limit_hit = true;
            self.cuts += 1;
            return Ok(None);
        }
        if let Some(moves) = axiom_alignment(c) {
            return Ok(Some(moves));
        }
        let key = canonical_key_with(c, self.cfg.commutative_identity);
        if self.branch.contains(&key) {
            self.cuts += 1;
            return Ok(None);
        }
        let memo = (key.clone(), budget, if limited { depth } else { 0 });
        if self.failed.contains(&memo) {
            return Ok(None);
        }
        self.branch.insert(key.clone());
        let cuts = self.cuts;
        let r = self.expand(c, budget, depth);
        self.branch.remove(&key);
        if let Ok(None) = r {
            if self.cuts == cuts {
                self.failed.insert(memo);
            }
        }
        r
    }

    /// Tries `moves` (a chain ending at its last premise) and continues
    /// from that premise.
    fn follow(
        &mut self,
        moves: Vec<Move>,
        budget: usize,
        depth: usize,
    ) -> Result<Option<Vec<Move>>, Stop> {
        let premise = moves.last().expect("nonempty chain").0.clone();
        let d = depth + moves.len();
        Ok(self.node(&premise, budget, d)?.map(|rest| {
            let mut all = moves;
            all.extend(rest);
            all
        }))
    }

    fn expand(
        &mut self,
        c: &Cirquent15,
        budget: usize,
        depth: usize,
    ) -> Result<Option<Vec<Move>>, Stop> {
        if let Some(chain) = invertible_move(c) {
            return self.follow(chain, budget, depth);
        }
        if let Some(i) = c
            .oformulas
            .iter()
            .position(|f| matches!(f, Formula::Cobrec(_)))
        {
            let free: Vec<usize> = (0..c.overgroups.len())
                .filter(|&o| !c.overgroups[o].contains(&i))
                .collect();
            for mask in 0u64..1 << free.len() {
                let add: Vec<usize> = (0..free.len())
                    .filter(|&b| mask >> b & 1 == 1)
                    .map(|b| free[b])
                    .collect();
                if let Some(p) = self.follow(vec![corec_inverse(c, i, &add)], budget, depth)? {
                    return Ok(Some(p));
                }
            }
            if budget > 0 {
                let prem = c.split_oformula(i, vec![c.oformulas[i].clone(); 2]);
                return self.follow(vec![(prem, Cl15Rule::Contraction { i })], budget - 1, depth);
            }
            return Ok(None);
        }
        // literals only
        match literal_plan(c) {
            Some(moves) => self.follow(moves, budget, depth),
            None => Ok(None),
        }
    }
}

/// Settles a cirquent of literals directly. Such a cirquent is provable iff
/// each undergroup can be given one complementary pair inside it, with
/// distinct chosen pairs disjoint and each chosen pair's two oformulas in
/// exactly the same overgroups. The moves delete every other arc and then
/// split overgroups into single pairs; repeated groups are left for the
/// caller to collapse.
fn literal_plan(c: &Cirquent15) -> Option<Vec<Move>> {
    let n = c.oformulas.len();
    let overs: Vec<Vec<usize>> = (0..n).map(|j| c.overs_of(j)).collect();
    let fits = |a: usize, b: usize| {
        a != b && c.oformulas[a] == c.oformulas[b].negate() && overs[a] == overs[b]
    };
    let mut partner: Vec<Option<usize>> = vec![None; n];
    let mut chosen = vec![(0, 0); c.undergroups.len()];
    if !assign(c, &fits, 0, &mut partner, &mut chosen) {
        return None;
    }
    let mut ids: Vec<usize> = (0..n).collect();
    let mut cur = c.clone();
    let mut moves = Vec::new();
    loop {
        let next = cur.undergroups.iter().enumerate().find_map(|(u, g)| {
            let (a, b) = chosen[u];
            g.iter()
                .find(|&&j| ids[j] != a && ids[j] != b)
                .map(|&j| (u, j))
        });
        let Some((u, j)) = next else { break };
        let (prem, rule) = weaken_inverse(&cur, u, j);
        if prem.oformulas.len() < cur.oformulas.len() {
            ids.remove(j);
        }
        cur = prem.clone();
        moves.push((prem, rule));
    }
    loop {
        let next = cur.overgroups.iter().position(|g| g.len() > 2);
        let Some(o) = next else { break };
        let g = &cur.overgroups[o];
        let mate = g
            .iter()
            .copied()
            .find(|&j| partner[ids[j]] == Some(ids[g[0]]))
            .expect("pairs fill overgroups");
        let (a, b): (Vec<usize>, Vec<usize>) = g.iter().partition(|&&j| j == g[0] || j == mate);
        let mut prem = cur.clone();
        prem.overgroups[o] = a;
        prem.overgroups.insert(o + 1, b);
        cur = prem.clone();
        moves.push((prem, Cl15Rule::Merge { i: o }));
    }
    Some(moves)
}

fn assign(
    c: &Cirquent15,
    fits: &impl Fn(usize, usize) -> bool,
    u: usize,
    partner: &mut Vec<Option<usize>>,
    chosen: &mut Vec<(usize, usize)>,
) -> bool {
    let Some(g) = c.undergroups.get(u) else {
        return true;
    };
    for (x, &a) in g.iter().enumerate() {
        for &b in &g[x + 1..] {
            if !fits(a, b) {
                continue;
            }
            let fresh = match (partner[a], partner[b]) {
                (None, None) => true,
                (Some(pa), Some(pb)) if pa == b && pb == a => false,
                _ => continue,
            };
            if fresh {
                partner[a] = Some(b);
                partner[b] = Some(a);
            }
            chosen[u] = (a, b);
            if assign(c, fits, u + 1, partner, chosen) {
                return true;
            }
            if fresh {
                partner[a] = None;
                partner[b] = None;
            }
        }
    }
    false
}

/// The first applicable step among disjunction, conjunction and recurrence
/// introduction and the removal of a repeated overgroup or undergroup.
fn invertible_move(c: &Cirquent15) -> Option<Vec<Move>> {
    if let Some((i, Formula::Por(v))) = c
        .oformulas
        .iter()
        .enumerate()
        .find(|(_, f)| matches!(f, Formula::Por(_)))
    {
        return Some(vec![or_inverse(c, i, v)]);
    }
    if let Some((i, Formula::Pand(v))) = c
        .oformulas
        .iter()
        .enumerate()
        .find(|(_, f)| matches!(f, Formula::Pand(_)))
    {
        return Some(vec![and_inverse(c, i, v)]);
    }
    if let Some(i) = c
        .oformulas
        .iter()
        .position(|f| matches!(f, Formula::Brec(_)))
    {
        return Some(vec![rec_inverse(c, i, c.overgroups.len())]);
    }
    for over in [true, false] {
        let gs = if over { &c.overgroups } else { &c.undergroups };
        for j in 1..gs.len() {
            if let Some(i) = (0..j).find(|&i| gs[i] == gs[j]) {
                let mut moves = Vec::new();
                let mut cur = c.clone();
                for k in (i + 1..j).rev() {
                    let gs = if over {
                        &mut cur.overgroups
                    } else {
                        &mut cur.undergroups
                    };
                    gs.swap(k, k + 1);
                    let rule = if over {
                        Cl15Rule::ExchangeOver { i: k }
                    } else {
                        Cl15Rule::ExchangeUnder { i: k }
                    };
                    moves.push((cur.clone(), rule));
                }
                let gs = if over {
                    &mut cur.overgroups
                } else {
                    &mut cur.undergroups
                };
                gs.remove(i + 1);
                let rule = if over {
                    Cl15Rule::DuplicateOver { i }
                } else {
                    Cl15Rule::DuplicateUnder { i }
                };
                moves.push((cur, rule));
                return Some(moves);
            }
        }
    }
    None
}

/// Exchange steps from `c` up to an Axiom conclusion, if `c` is one up to
/// the order of its oformulas and groups.
fn axiom_alignment(c: &Cirquent15) -> Option<Vec<Move>> {
    let n = c.oformulas.len();
    if n % 2 == 1 || c.undergroups.len() != n / 2 || c.overgroups.len() != n / 2 {
        return None;
    }
    if c.undergroups.iter().any(|g| g.len() != 2) {
        return None;
    }
    let mut seen = vec![false; n];
    for g in &c.undergroups {
        for &j in g {
            if std::mem::replace(&mut seen[j], true) {
                return None;
            }
        }
        if c.oformulas[g[0]] != c.oformulas[g[1]].negate() {
            return None;
        }
    }
    let mut unders = c.undergroups.clone();
    let mut overs = c.overgroups.clone();
    unders.sort();
    overs.sort();
    if unders != overs {
        return None;
    }
    // oformula j moves to rank[j]
    let mut rank = vec![0; n];
    for (k, g) in c.undergroups.iter().enumerate() {
        rank[g[0]] = 2 * k;
        rank[g[1]] = 2 * k + 1;
    }
    let mut moves = Vec::new();
    let mut cur = c.clone();
    bubble(&mut rank, |k| {
        cur = cur.swap_oformulas(k);
        moves.push((cur.clone(), Cl15Rule::ExchangeOformula { i: k }));
    });
    let mut under_rank: Vec<usize> = cur.undergroups.iter().map(|g| g[0] / 2).collect();
    bubble(&mut under_rank, |k| {
        cur.undergroups.swap(k, k + 1);
        moves.push((cur.clone(), Cl15Rule::ExchangeUnder { i: k }));
    });
    let mut over_rank: Vec<usize> = cur.overgroups.iter().map(|g| g[0] / 2).collect();
    bubble(&mut over_rank, |k| {
        cur.overgroups.swap(k, k + 1);
        moves.push((cur.clone(), Cl15Rule::ExchangeOver { i: k }));
    });
    debug_assert!(super::axiom_match(&cur));
    Some(moves)
}

/// Sorts `rank` by adjacent swaps, reporting each swap position.
fn bubble(rank: &mut [usize], mut swap: impl FnMut(usize)) {
    loop {
        let Some(k) = (0..rank.len().saturating_sub(1)).find(|&k| rank[k] > rank[k + 1]) else {
            return;
        };
        rank.swap(k, k + 1);
        swap(k);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cl15::{check_proof, RuleTag};
    use crate::formula::parse;

    fn run(src: &str, cfg: &SearchConfig) -> Verdict {
        decide(&parse(src).unwrap(), cfg).unwrap().0
    }

    #[test]
    fn small_theorems() {
        for src in [
            "~F | F",
            "F -> F",
            "!F -> F",
            "F -> ?F",
            "!F -> !!F",
            "?!F -> !?F",
            "F & G -> G & F",
        ] {
            match run(src, &SearchConfig::default()) {
                Verdict::Provable(p) => check_proof(&p).unwrap_or_else(|e| panic!("{src}: {e}")),
                other => panic!("{src}: {other:?}"),
            }
        }
    }

    #[test]
    fn contraction_example_needs_exactly_one() {
        let Verdict::Provable(p) = run("!F -> !F & !F", &SearchConfig::default()) else {
            panic!()
        };
        check_proof(&p).unwrap();
        assert_eq!(p.count(RuleTag::C), 1);
        let cfg = SearchConfig {
            mode: Mode::Cl15c,
            ..SearchConfig::default()
        };
        assert!(matches!(
            run("!F -> !F & !F", &cfg),
            Verdict::Unprovable { .. }
        ));
    }

    #[test]
    fn non_theorems() {
        for src in ["F", "F -> G", "F -> !F", "?F -> F", "F -> F & F"] {
            assert!(
                matches!(
                    run(src, &SearchConfig::default()),
                    Verdict::Unprovable { .. }
                ),
                "{src}"
            );
        }
    }

    #[test]
    fn node_budget_reports_exhaustion() {
        let cfg = SearchConfig {
            max_nodes: 3,
            ..SearchConfig::default()
        };
        assert!(matches!(
            run("?!F -> !?F", &cfg),
            Verdict::ResourceExhausted { .. }
        ));
    }
}
