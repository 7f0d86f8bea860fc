//! Finite games as trees of labelled moves, and the reading of formulas as
//! games under an interpretation of their atoms.

pub mod catalogue;
mod delay;
mod play;
mod solve;

pub use delay::{is_delay, is_static, p_delays, DEFAULT_STATIC_BOUND};
pub use play::{
    copycat_obligation, play_match, verify_strategy, Copycat, FnStrategy, MatchResult, Pass,
    RandomAdversary, Scripted, Strategy,
};
pub use solve::{solve, uniform_policy, PolicyTable};

use crate::formula::{Atom, Formula};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    /// ⊤, the machine.
    #[serde(rename = "T")]
    Machine,
    /// ⊥, the environment.
    #[serde(rename = "B")]
    Env,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Machine => Player::Env,
            Player::Env => Player::Machine,
        }
    }

    pub fn from_bool(machine_wins: bool) -> Player {
        if machine_wins {
            Player::Machine
        } else {
            Player::Env
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Player::Machine => "T",
            Player::Env => "B",
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Machine => "\u{22a4}",
            Player::Env => "\u{22a5}",
        })
    }
}

/// A move together with the player who made it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LabMove {
    pub by: Player,
    #[serde(rename = "move")]
    pub mv: String,
}

impl LabMove {
    pub fn new(by: Player, mv: impl Into<String>) -> LabMove {
        LabMove { by, mv: mv.into() }
    }

    pub fn machine(mv: impl Into<String>) -> LabMove {
        LabMove::new(Player::Machine, mv)
    }

    pub fn env(mv: impl Into<String>) -> LabMove {
        LabMove::new(Player::Env, mv)
    }
}

impl fmt::Display for LabMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.by, self.mv)
    }
}

pub type Run = Vec<LabMove>;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("{0} is not a legal position")]
    IllegalPosition(String),
    #[error("no interpretation for atom {0}")]
    Unassigned(String),
    #[error("recurrence operators have no finite game reading here")]
    Recurrence,
    #[error("search bound of {0} exceeded")]
    ResourceExhausted(usize),
    #[error("invalid game description: {0}")]
    Invalid(String),
}

#[derive(Debug, PartialEq, Eq)]
pub struct Node {
    pub winner: Player,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub by: Player,
    pub mv: String,
    pub to: GameTree,
}

/// A finite game: every node is a legal position, labelled with the winner
/// of the run that ends there.
#[derive(Clone, Debug)]
pub struct GameTree(Arc<Node>);

impl PartialEq for GameTree {
    fn eq(&self, other: &GameTree) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for GameTree {}

impl GameTree {
    pub fn leaf(winner: Player) -> GameTree {
        GameTree(Arc::new(Node {
            winner,
            edges: Vec::new(),
        }))
    }

    pub fn new(winner: Player, edges: Vec<Edge>) -> GameTree {
        GameTree(Arc::new(Node { winner, edges }))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub(crate) fn id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn winner(&self) -> Player {
        self.0.winner
    }

    pub fn edges(&self) -> &[Edge] {
        &self.0.edges
    }

    pub fn child(&self, by: Player, mv: &str) -> Option<&GameTree> {
        self.0
            .edges
            .iter()
            .find(|e| e.by == by && e.mv == mv)
            .map(|e| &e.to)
    }

    pub fn has_moves(&self, by: Player) -> bool {
        self.0.edges.iter().any(|e| e.by == by)
    }

    /// Longest legal run.
    pub fn depth(&self) -> usize {
        self.edges()
            .iter()
            .map(|e| 1 + e.to.depth())
            .max()
            .unwrap_or(0)
    }

    /// Number of legal positions (shared subtrees counted once per path).
    pub fn positions(&self) -> usize {
        1 + self.edges().iter().map(|e| e.to.positions()).sum::<usize>()
    }

    /// Swaps the roles of the players.
    pub fn negate(&self) -> GameTree {
        GameTree::new(
            self.winner().opponent(),
            self.edges()
                .iter()
                .map(|e| Edge {
                    by: e.by.opponent(),
                    mv: e.mv.clone(),
                    to: e.to.negate(),
                })
                .collect(),
        )
    }

    /// The game played from position `run` on.
    pub fn prefixation(&self, run: &[LabMove]) -> Result<GameTree, GameError> {
        let mut cur = self;
        for m in run {
            cur = cur
                .child(m.by, &m.mv)
                .ok_or_else(|| GameError::IllegalPosition(show_run(run)))?;
        }
        Ok(cur.clone())
    }

    pub fn adjudicate(&self, run: &[LabMove]) -> Adjudication {
        let mut cur = self;
        for (i, m) in run.iter().enumerate() {
            match cur.child(m.by, &m.mv) {
                Some(next) => cur = next,
                None => {
                    return Adjudication {
                        legal: false,
                        offender: Some(m.by),
                        illegal_at: Some(i),
                        winner: m.by.opponent(),
                    }
                }
            }
        }
        Adjudication {
            legal: true,
            offender: None,
            illegal_at: None,
            winner: cur.winner(),
        }
    }

    /// Every labelled move occurring anywhere in the tree.
    pub fn alphabet(&self) -> Vec<LabMove> {
        fn go(g: &GameTree, out: &mut std::collections::BTreeSet<LabMove>) {
            for e in g.edges() {
                out.insert(LabMove::new(e.by, e.mv.clone()));
                go(&e.to, out);
            }
        }
        let mut set = std::collections::BTreeSet::new();
        go(self, &mut set);
        set.into_iter().collect()
    }

    /// At no position do both players have a legal move.
    pub fn is_strict(&self) -> bool {
        !(self.has_moves(Player::Machine) && self.has_moves(Player::Env))
            && self.edges().iter().all(|e| e.to.is_strict())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(JsonNode::from(self)).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<GameTree, GameError> {
        let node: JsonNode =
            serde_json::from_value(v.clone()).map_err(|e| GameError::Invalid(e.to_string()))?;
        node.into_tree()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Adjudication {
    pub legal: bool,
    pub offender: Option<Player>,
    /// Index of the first illegal move.
    pub illegal_at: Option<usize>,
    pub winner: Player,
}

pub fn show_run(run: &[LabMove]) -> String {
    let parts: Vec<String> = run.iter().map(|m| m.to_string()).collect();
    format!("\u{27e8}{}\u{27e9}", parts.join(","))
}

#[derive(Serialize, Deserialize)]
struct JsonNode {
    winner: Player,
    #[serde(default)]
    edges: Vec<JsonEdge>,
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    by: Player,
    #[serde(rename = "move")]
    mv: String,
    to: JsonNode,
}

impl From<&GameTree> for JsonNode {
    fn from(g: &GameTree) -> JsonNode {
        JsonNode {
            winner: g.winner(),
            edges: g
                .edges()
                .iter()
                .map(|e| JsonEdge {
                    by: e.by,
                    mv: e.mv.clone(),
                    to: JsonNode::from(&e.to),
                })
                .collect(),
        }
    }
}

impl JsonNode {
    fn into_tree(self) -> Result<GameTree, GameError> {
        let mut edges: Vec<Edge> = Vec::new();
        for e in self.edges {
            if edges.iter().any(|x| x.by == e.by && x.mv == e.mv) {
                return Err(GameError::Invalid(format!(
                    "duplicate move {}{}",
                    e.by, e.mv
                )));
            }
            edges.push(Edge {
                by: e.by,
                mv: e.mv,
                to: e.to.into_tree()?,
            });
        }
        Ok(GameTree::new(self.winner, edges))
    }
}

/// Values for elementary atoms and games for general atoms.
#[derive(Clone, Debug, Default)]
pub struct Interpretation {
    pub elementary: BTreeMap<Atom, bool>,
    pub general: BTreeMap<Atom, GameTree>,
}

impl Interpretation {
    pub fn new() -> Interpretation {
        Interpretation::default()
    }

    pub fn with_value(mut self, atom: &str, value: bool) -> Interpretation {
        self.elementary.insert(Atom::new(atom), value);
        self
    }

    pub fn with_game(mut self, atom: &str, game: GameTree) -> Interpretation {
        self.general.insert(Atom::new(atom), game);
        self
    }

    /// Reads `{"p": "T", "P": "<catalogue name>" | {game node}}`.
    pub fn from_json(
        v: &serde_json::Value,
        catalogue: &BTreeMap<String, GameTree>,
    ) -> Result<Interpretation, GameError> {
        let obj = v
            .as_object()
            .ok_or_else(|| GameError::Invalid("interpretation must be an object".into()))?;
        let mut out = Interpretation::new();
        for (name, val) in obj {
            let atom = Atom::try_new(name)
                .ok_or_else(|| GameError::Invalid(format!("bad atom {name:?}")))?;
            let game = match val {
                serde_json::Value::String(s) if s == "T" || s == "B" => {
                    GameTree::leaf(Player::from_bool(s == "T"))
                }
                serde_json::Value::String(s) => catalogue
                    .get(s)
                    .cloned()
                    .ok_or_else(|| GameError::Invalid(format!("unknown catalogue game {s:?}")))?,
                other => GameTree::from_json(other)?,
            };
            if atom.is_elementary() {
                if !game.edges().is_empty() {
                    return Err(GameError::Invalid(format!(
                        "elementary atom {name} needs a moveless game"
                    )));
                }
                out.elementary
                    .insert(atom, game.winner() == Player::Machine);
            } else {
                out.general.insert(atom, game);
            }
        }
        Ok(out)
    }
}

/// The game denoted by `f` (normalized first) under `itp`.
pub fn interpret(f: &Formula, itp: &Interpretation) -> Result<GameTree, GameError> {
    let g = f.normalize();
    build(&g, itp)
}

fn build(f: &Formula, itp: &Interpretation) -> Result<GameTree, GameError> {
    Ok(match f {
        Formula::True => GameTree::leaf(Player::Machine),
        Formula::False => GameTree::leaf(Player::Env),
        Formula::Lit { atom, negated } => {
            let base = if atom.is_elementary() {
                match itp.elementary.get(atom) {
                    Some(&v) => GameTree::leaf(Player::from_bool(v)),
                    None => itp
                        .general
                        .get(atom)
                        .cloned()
                        .ok_or_else(|| GameError::Unassigned(atom.to_string()))?,
                }
            } else {
                match itp.general.get(atom) {
                    Some(g) => g.clone(),
                    None => GameTree::leaf(Player::from_bool(
                        *itp.elementary
                            .get(atom)
                            .ok_or_else(|| GameError::Unassigned(atom.to_string()))?,
                    )),
                }
            };
            if *negated {
                base.negate()
            } else {
                base
            }
        }
        Formula::Chand(v) | Formula::Chor(v) => {
            let chooser = if matches!(f, Formula::Chand(_)) {
                Player::Env
            } else {
                Player::Machine
            };
            // the chooser loses if no choice is ever made
            let edges = v
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    Ok(Edge {
                        by: chooser,
                        mv: i.to_string(),
                        to: build(g, itp)?,
                    })
                })
                .collect::<Result<Vec<_>, GameError>>()?;
            GameTree::new(chooser.opponent(), edges)
        }
        Formula::Pand(v) | Formula::Por(v) => {
            let parts = v
                .iter()
                .map(|g| build(g, itp))
                .collect::<Result<Vec<_>, _>>()?;
            parallel(&parts, matches!(f, Formula::Pand(_)))
        }
        Formula::Brec(_) | Formula::Cobrec(_) => return Err(GameError::Recurrence),
        Formula::Not(_) | Formula::Impl(..) | Formula::Brimpl(..) => unreachable!("normalized"),
    })
}

/// Parallel conjunction (`conj`) or disjunction of component games. Moves
/// in component `i` are prefixed by `i.`.
pub fn parallel(parts: &[GameTree], conj: bool) -> GameTree {
    let mut memo: std::collections::HashMap<Vec<usize>, GameTree> =
        std::collections::HashMap::new();
    parallel_memo(parts.to_vec(), conj, &mut memo)
}

fn parallel_memo(
    parts: Vec<GameTree>,
    conj: bool,
    memo: &mut std::collections::HashMap<Vec<usize>, GameTree>,
) -> GameTree {
    let key: Vec<usize> = parts.iter().map(GameTree::id).collect();
    if let Some(g) = memo.get(&key) {
        return g.clone();
    }
    let machine = |g: &GameTree| g.winner() == Player::Machine;
    let win = if conj {
        parts.iter().all(machine)
    } else {
        parts.iter().any(machine)
    };
    let mut edges = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        for e in p.edges() {
            let mut next = parts.clone();
            next[i] = e.to.clone();
            edges.push(Edge {
                by: e.by,
                mv: format!("{i}.{}", e.mv),
                to: parallel_memo(next, conj, memo),
            });
        }
    }
    let g = GameTree::new(Player::from_bool(win), edges);
    memo.insert(key, g.clone());
    g
}
