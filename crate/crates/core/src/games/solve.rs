use super::{interpret, Edge, GameError, GameTree, Interpretation, LabMove, Player, Strategy};
use crate::formula::Formula;
use std::collections::HashMap;

/// A positional machine policy found by [`solve`], keyed by the game node
/// and by who made the last move.
pub struct PolicyTable {
    game: GameTree,
    table: HashMap<(usize, bool), Option<String>>,
}

impl Strategy for PolicyTable {
    fn respond(&self, position: &[LabMove]) -> Option<String> {
        let node = self.game.prefixation(position).ok()?;
        let last_env = position.last().is_some_and(|m| m.by == Player::Env);
        self.table.get(&(node.id(), last_env)).cloned().flatten()
    }
}

struct Solver {
    need: HashMap<(usize, bool), bool>,
    after_machine: HashMap<usize, bool>,
    choice: HashMap<(usize, bool), Option<String>>,
}

impl Solver {
    /// The machine's prospects when it is about to act at `n`.
    /// `last_env` says the position ends with an environment move; then a
    /// pass lets the environment act again at the same position, where the
    /// positional policy has to pass once more.
    fn need(&mut self, n: &GameTree, last_env: bool) -> bool {
        if let Some(&v) = self.need.get(&(n.id(), last_env)) {
            return v;
        }
        let mut pass = n.winner() == Player::Machine;
        if last_env && pass {
            for e in n.edges().iter().filter(|e| e.by == Player::Env) {
                if !self.need(&e.to, true) {
                    pass = false;
                    break;
                }
            }
        }
        let mut best = pass;
        let mut pick = None;
        if !pass {
            for e in n.edges().iter().filter(|e| e.by == Player::Machine) {
                if self.after_machine(&e.to) {
                    best = true;
                    pick = Some(e.mv.clone());
                    break;
                }
            }
        }
        self.need.insert((n.id(), last_env), best);
        self.choice.insert((n.id(), last_env), pick);
        best
    }

    /// Value of a step starting at `n` with the environment to act.
    fn after_machine(&mut self, n: &GameTree) -> bool {
        if let Some(&v) = self.after_machine.get(&n.id()) {
            return v;
        }
        let mut v = self.need(n, false);
        if v {
            for e in n.edges().iter().filter(|e| e.by == Player::Env) {
                if !self.need(&e.to, true) {
                    v = false;
                    break;
                }
            }
        }
        self.after_machine.insert(n.id(), v);
        v
    }
}

/// Backward induction over positional machine policies under the match
/// scheduler: returns a winning policy if one exists.
pub fn solve(g: &GameTree) -> Option<PolicyTable> {
    let mut s = Solver {
        need: HashMap::new(),
        after_machine: HashMap::new(),
        choice: HashMap::new(),
    };
    if s.after_machine(g) {
        Some(PolicyTable {
            game: g.clone(),
            table: s.choice,
        })
    } else {
        None
    }
}

fn combine(trees: &[GameTree], memo: &mut HashMap<Vec<usize>, GameTree>) -> GameTree {
    let key: Vec<usize> = trees.iter().map(GameTree::id).collect();
    if let Some(g) = memo.get(&key) {
        return g.clone();
    }
    let first = &trees[0];
    let win = trees.iter().all(|t| t.winner() == Player::Machine);
    let edges = first
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let kids: Vec<GameTree> = trees
                .iter()
                .map(|t| {
                    let f = &t.edges()[i];
                    assert!(f.by == e.by && f.mv == e.mv, "trees differ in shape");
                    f.to.clone()
                })
                .collect();
            Edge {
                by: e.by,
                mv: e.mv.clone(),
                to: combine(&kids, memo),
            }
        })
        .collect();
    let g = GameTree::new(Player::from_bool(win), edges);
    memo.insert(key, g.clone());
    g
}

/// For a formula over elementary atoms and choice connectives: the game won
/// by ⊤ exactly where it is won under every truth assignment, together with
/// a policy winning it if there is one. A policy winning the combined game
/// wins the formula's game under every interpretation at once.
pub fn uniform_policy(f: &Formula) -> Result<(GameTree, Option<PolicyTable>), GameError> {
    let atoms: Vec<_> = f.atoms().into_iter().collect();
    if let Some(a) = atoms.iter().find(|a| !a.is_elementary()) {
        return Err(GameError::Invalid(format!(
            "general atom {a} has no finite set of interpretations"
        )));
    }
    let mut trees = Vec::new();
    for row in 0..(1u64 << atoms.len()) {
        let mut itp = Interpretation::new();
        for (i, a) in atoms.iter().enumerate() {
            itp.elementary.insert(a.clone(), row >> i & 1 == 1);
        }
        trees.push(interpret(f, &itp)?);
    }
    let g = combine(&trees, &mut HashMap::new());
    let policy = solve(&g);
    Ok((g, policy))
}

#[cfg(test)]
mod tests {
    use super::super::verify_strategy;
    use super::*;
    use crate::formula::parse;

    #[test]
    fn uniform_policies() {
        for (src, valid) in [
            ("p + ~p", false),
            ("p | ~p", true),
            ("~p * q | (p + ~q)", true),
            ("(p * q) | ~p", false),
            ("(~p + ~q) | (p * q)", true),
            ("((p -> q) * (p -> r)) -> (p -> (q * r))", true),
            ("(p * q) -> (p + q)", true),
            ("(p + q) -> (p * q)", false),
        ] {
            let f = parse(src).unwrap();
            let (g, policy) = uniform_policy(&f).unwrap();
            assert_eq!(policy.is_some(), valid, "{src}");
            if let Some(pol) = policy {
                assert!(verify_strategy(&g, &pol).is_ok(), "{src}");
            }
        }
    }
}
