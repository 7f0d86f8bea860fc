//! Small named games and a generator for every game tree up to a given depth
//! over a tiny move alphabet, used to interpret general atoms in tests.

use super::{Edge, GameTree, Player};
use std::collections::BTreeMap;

fn edge(by: Player, mv: &str, to: GameTree) -> Edge {
    Edge {
        by,
        mv: mv.to_string(),
        to,
    }
}

pub fn named() -> BTreeMap<String, GameTree> {
    use Player::{Env as B, Machine as T};
    let leaf = GameTree::leaf;
    let mut out = BTreeMap::new();
    out.insert("T".to_string(), leaf(T));
    out.insert("B".to_string(), leaf(B));
    // ⊤ picks a winning or a losing answer
    out.insert(
        "choose_T".to_string(),
        GameTree::new(B, vec![edge(T, "a", leaf(T)), edge(T, "b", leaf(B))]),
    );
    out.insert(
        "choose_B".to_string(),
        GameTree::new(T, vec![edge(B, "a", leaf(B)), edge(B, "b", leaf(T))]),
    );
    // ⊥ asks, ⊤ must answer with the move named in the question
    let answer = |right: &str, wrong: &str| {
        GameTree::new(B, vec![edge(T, right, leaf(T)), edge(T, wrong, leaf(B))])
    };
    out.insert(
        "question".to_string(),
        GameTree::new(
            T,
            vec![
                edge(B, "a", answer("a", "b")),
                edge(B, "b", answer("b", "a")),
            ],
        ),
    );
    // ⊤ commits first, then ⊥ may refute with a matching move
    let refute = |m: &str| GameTree::new(T, vec![edge(B, m, leaf(B))]);
    out.insert(
        "commit".to_string(),
        GameTree::new(B, vec![edge(T, "a", refute("a")), edge(T, "b", leaf(T))]),
    );
    // whoever moves first decides; not strict and not static
    out.insert(
        "race".to_string(),
        GameTree::new(B, vec![edge(T, "a", leaf(T)), edge(B, "b", leaf(B))]),
    );
    out
}

/// Every game of depth at most `max_depth` whose positions offer a subset
/// of the moves `⊤a` and `⊥b`, in a fixed order.
pub fn small_games(max_depth: usize) -> Vec<GameTree> {
    let mut levels: Vec<GameTree> =
        vec![GameTree::leaf(Player::Machine), GameTree::leaf(Player::Env)];
    for _ in 0..max_depth {
        let prev = levels.clone();
        let mut next = Vec::new();
        for winner in [Player::Machine, Player::Env] {
            next.push(GameTree::leaf(winner));
            for a in &prev {
                next.push(GameTree::new(
                    winner,
                    vec![edge(Player::Machine, "a", a.clone())],
                ));
                next.push(GameTree::new(
                    winner,
                    vec![edge(Player::Env, "b", a.clone())],
                ));
                for b in &prev {
                    next.push(GameTree::new(
                        winner,
                        vec![
                            edge(Player::Machine, "a", a.clone()),
                            edge(Player::Env, "b", b.clone()),
                        ],
                    ));
                }
            }
        }
        levels = next;
    }
    levels
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_sizes() {
        assert_eq!(small_games(0).len(), 2);
        // per winner: a leaf, 2 choices of one edge to each of 2 subtrees, 4 two-edge trees
        assert_eq!(small_games(1).len(), 2 * (1 + 2 * 2 + 4));
        assert_eq!(small_games(2).len(), 2 * (1 + 2 * 18 + 18 * 18));
        assert!(small_games(2).iter().all(|g| g.depth() <= 2));
    }
}
