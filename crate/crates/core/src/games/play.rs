use super::{GameTree, LabMove, Player, Run};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

/// A deterministic, positional strategy: the move to make (or `None` to
/// pass) as a function of the whole position.
pub trait Strategy {
    fn respond(&self, position: &[LabMove]) -> Option<String>;
}

pub struct Pass;

impl Strategy for Pass {
    fn respond(&self, _: &[LabMove]) -> Option<String> {
        None
    }
}

pub struct FnStrategy<F: Fn(&[LabMove]) -> Option<String>>(pub F);

impl<F: Fn(&[LabMove]) -> Option<String>> Strategy for FnStrategy<F> {
    fn respond(&self, position: &[LabMove]) -> Option<String> {
        (self.0)(position)
    }
}

/// Plays `moves` in order, one per turn, then passes.
pub struct Scripted {
    pub player: Player,
    pub moves: Vec<String>,
}

impl Strategy for Scripted {
    fn respond(&self, position: &[LabMove]) -> Option<String> {
        let made = position.iter().filter(|m| m.by == self.player).count();
        self.moves.get(made).cloned()
    }
}

/// Copies each environment move made under one prefix to the other prefix.
pub struct Copycat {
    pub left: String,
    pub right: String,
}

impl Copycat {
    /// The strategy for `¬G ∨ G`.
    pub fn for_disjunction() -> Copycat {
        Copycat {
            left: "0.".into(),
            right: "1.".into(),
        }
    }
}

impl Strategy for Copycat {
    fn respond(&self, position: &[LabMove]) -> Option<String> {
        copycat_obligation(position, &self.left, &self.right)
    }
}

/// The earliest environment move under one prefix that has no machine copy
/// under the other one yet, translated to the other prefix.
pub fn copycat_obligation(position: &[LabMove], a: &str, b: &str) -> Option<String> {
    // env moves in a region, and machine copies placed in the other one
    let mut env_a: Vec<(usize, &str)> = Vec::new();
    let mut env_b: Vec<(usize, &str)> = Vec::new();
    let mut copies_in_b = 0usize;
    let mut copies_in_a = 0usize;
    for (i, m) in position.iter().enumerate() {
        if let Some(rest) = m.mv.strip_prefix(a) {
            match m.by {
                Player::Env => env_a.push((i, rest)),
                Player::Machine => copies_in_a += 1,
            }
        } else if let Some(rest) = m.mv.strip_prefix(b) {
            match m.by {
                Player::Env => env_b.push((i, rest)),
                Player::Machine => copies_in_b += 1,
            }
        }
    }
    let todo_b = env_a.get(copies_in_b);
    let todo_a = env_b.get(copies_in_a);
    match (todo_b, todo_a) {
        (Some(&(i, mv)), Some(&(j, _))) if i < j => Some(format!("{b}{mv}")),
        (Some(_), Some(&(_, mv))) => Some(format!("{a}{mv}")),
        (Some(&(_, mv)), None) => Some(format!("{b}{mv}")),
        (None, Some(&(_, mv))) => Some(format!("{a}{mv}")),
        (None, None) => None,
    }
}

/// Picks uniformly among passing and the legal moves, as a deterministic
/// function of the seed and the position.
pub struct RandomAdversary {
    pub game: GameTree,
    pub player: Player,
    pub seed: u64,
}

impl Strategy for RandomAdversary {
    fn respond(&self, position: &[LabMove]) -> Option<String> {
        let node = self.game.prefixation(position).ok()?;
        let options: Vec<&str> = node
            .edges()
            .iter()
            .filter(|e| e.by == self.player)
            .map(|e| e.mv.as_str())
            .collect();
        let mut h = DefaultHasher::new();
        position.hash(&mut h);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ h.finish());
        let k = rng.gen_range(0..=options.len());
        options.get(k).map(|s| s.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchResult {
    pub run: Run,
    pub winner: super::Player,
    pub offender: Option<Player>,
    pub steps: usize,
}

/// Runs a match. Each step offers the position to ⊥ and then to ⊤; the
/// match ends when both pass in the same step, when a move is illegal, or
/// after `max_steps` steps.
pub fn play_match(
    g: &GameTree,
    machine: &dyn Strategy,
    env: &dyn Strategy,
    max_steps: usize,
) -> MatchResult {
    let mut run: Run = Vec::new();
    let mut node = g.clone();
    for step in 0..max_steps {
        let mut moved = false;
        for (player, strat) in [(Player::Env, env), (Player::Machine, machine)] {
            if let Some(mv) = strat.respond(&run) {
                moved = true;
                match node.child(player, &mv).cloned() {
                    Some(next) => {
                        run.push(LabMove::new(player, mv));
                        node = next;
                    }
                    None => {
                        run.push(LabMove::new(player, mv));
                        return MatchResult {
                            run,
                            winner: player.opponent(),
                            offender: Some(player),
                            steps: step + 1,
                        };
                    }
                }
            }
        }
        if !moved {
            return MatchResult {
                run,
                winner: node.winner(),
                offender: None,
                steps: step + 1,
            };
        }
    }
    MatchResult {
        winner: node.winner(),
        run,
        offender: None,
        steps: max_steps,
    }
}

/// Checks `machine` against every environment behaviour under the match
/// scheduler. Returns a lost run on failure.
pub fn verify_strategy(g: &GameTree, machine: &dyn Strategy) -> Result<(), Run> {
    let mut run = Vec::new();
    env_turn(g, machine, &mut run)
}

fn env_turn(node: &GameTree, m: &dyn Strategy, run: &mut Run) -> Result<(), Run> {
    machine_turn(node, m, run, true)?;
    for e in node.edges().iter().filter(|e| e.by == Player::Env) {
        run.push(LabMove::new(Player::Env, e.mv.clone()));
        let r = machine_turn(&e.to, m, run, false);
        run.pop();
        r?;
    }
    Ok(())
}

fn machine_turn(
    node: &GameTree,
    m: &dyn Strategy,
    run: &mut Run,
    env_passed: bool,
) -> Result<(), Run> {
    match m.respond(run) {
        None if env_passed => {
            if node.winner() == Player::Machine {
                Ok(())
            } else {
                Err(run.clone())
            }
        }
        None => env_turn(node, m, run),
        Some(mv) => match node.child(Player::Machine, &mv) {
            Some(next) => {
                run.push(LabMove::new(Player::Machine, mv));
                let r = env_turn(next, m, run);
                run.pop();
                r
            }
            None => {
                let mut lost = run.clone();
                lost.push(LabMove::new(Player::Machine, mv));
                Err(lost)
            }
        },
    }
}
