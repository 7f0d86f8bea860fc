use super::{GameError, GameTree, LabMove, Player};
use std::collections::HashSet;

pub const DEFAULT_STATIC_BOUND: usize = 5_000_000;

/// Whether `candidate` is a `p`-delay of `original`: both runs contain the
/// same moves of each player in the same order, and every move of the other
/// player that came before some `p` move in `original` still does.
pub fn is_delay(candidate: &[LabMove], original: &[LabMove], p: Player) -> bool {
    let own =
        |r: &[LabMove], q: Player| r.iter().filter(|m| m.by == q).cloned().collect::<Vec<_>>();
    if own(candidate, p) != own(original, p)
        || own(candidate, p.opponent()) != own(original, p.opponent())
    {
        return false;
    }
    // number of p moves preceding each non-p move
    let before = |r: &[LabMove]| {
        let mut seen = 0usize;
        let mut out = Vec::new();
        for m in r {
            if m.by == p {
                seen += 1;
            } else {
                out.push(seen);
            }
        }
        out
    };
    before(candidate)
        .iter()
        .zip(before(original))
        .all(|(c, o)| *c <= o)
}

/// Every `p`-delay of `run`, `run` itself included.
pub fn p_delays(run: &[LabMove], p: Player) -> Vec<Vec<LabMove>> {
    let mine: Vec<&LabMove> = run.iter().filter(|m| m.by == p).collect();
    let theirs: Vec<&LabMove> = run.iter().filter(|m| m.by != p).collect();
    // own move i may only be placed once this many opponent moves are in
    let mut needed = vec![0usize; mine.len()];
    let (mut i, mut j) = (0usize, 0usize);
    for m in run {
        if m.by == p {
            needed[i] = j;
            i += 1;
        } else {
            j += 1;
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(run.len());
    fn go(
        i: usize,
        j: usize,
        mine: &[&LabMove],
        theirs: &[&LabMove],
        needed: &[usize],
        cur: &mut Vec<LabMove>,
        out: &mut Vec<Vec<LabMove>>,
    ) {
        if i == mine.len() && j == theirs.len() {
            out.push(cur.clone());
            return;
        }
        if j < theirs.len() {
            cur.push(theirs[j].clone());
            go(i, j + 1, mine, theirs, needed, cur, out);
            cur.pop();
        }
        if i < mine.len() && j >= needed[i] {
            cur.push(mine[i].clone());
            go(i + 1, j, mine, theirs, needed, cur, out);
            cur.pop();
        }
    }
    go(0, 0, &mine, &theirs, &needed, &mut cur, &mut out);
    out
}

/// Where a run has led: a legal position, or a loss for the player who
/// made the first illegal move.
#[derive(Clone, Copy)]
enum State<'a> {
    At(&'a GameTree),
    Lost(Player),
}

impl<'a> State<'a> {
    fn key(self) -> (usize, u8) {
        match self {
            State::At(g) => (g.id(), 0),
            State::Lost(p) => (0, 1 + p as u8),
        }
    }

    fn step(self, m: &LabMove) -> State<'a> {
        match self {
            State::At(g) => g.child(m.by, &m.mv).map_or(State::Lost(m.by), State::At),
            lost => lost,
        }
    }

    fn winner(self) -> Player {
        match self {
            State::At(g) => g.winner(),
            State::Lost(p) => p.opponent(),
        }
    }

    fn offender(self) -> Option<Player> {
        match self {
            State::At(_) => None,
            State::Lost(p) => Some(p),
        }
    }
}

/// Decides the static property: for both players `p` and all runs Γ, every
/// `p`-delay Δ of Γ is `p`-won if Γ is, and `p` does not offend in Δ unless
/// it does in Γ. Runs of any length count, illegal ones included.
///
/// Every `p`-delay arises from a chain of adjacent swaps that move a `p`
/// move past the opponent move right after it, so it is enough to compare
/// `αxyβ` with `αyxβ`. For each position `α` and pair `x, y` this walks the
/// two states reached after `xy` and `yx` in lockstep over all common
/// continuations `β`. `bound` caps the number of state pairs visited.
pub fn is_static(g: &GameTree, bound: usize) -> Result<bool, GameError> {
    let mut alphabet = g.alphabet();
    // stands for every move that is illegal everywhere
    alphabet.extend([Player::Machine, Player::Env].map(|p| LabMove::new(p, "#")));
    let mut positions = Vec::new();
    let mut seen = HashSet::new();
    let mut stack = vec![g];
    while let Some(n) = stack.pop() {
        if seen.insert(n.id()) {
            positions.push(n);
            stack.extend(n.edges().iter().map(|e| &e.to));
        }
    }
    let mut visited = HashSet::new();
    let mut budget = bound;
    for &n in &positions {
        for x in &alphabet {
            for y in alphabet.iter().filter(|y| y.by != x.by) {
                let at = State::At(n);
                let (s1, s2) = (at.step(x).step(y), at.step(y).step(x));
                if !dominated(s1, s2, x.by, &alphabet, &mut visited, &mut budget)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Whether every continuation that `p` wins from `a` it also wins from
/// `b`, and every continuation in which `p` does not offend from `a` is
/// also free of `p` offences from `b`.
fn dominated(
    a: State<'_>,
    b: State<'_>,
    p: Player,
    alphabet: &[LabMove],
    visited: &mut HashSet<((usize, u8), (usize, u8), Player)>,
    budget: &mut usize,
) -> Result<bool, GameError> {
    let mut stack = vec![(a, b)];
    while let Some((a, b)) = stack.pop() {
        if a.key() == b.key() || !visited.insert((a.key(), b.key(), p)) {
            continue;
        }
        if *budget == 0 {
            return Err(GameError::ResourceExhausted(0));
        }
        *budget -= 1;
        if (a.winner() == p && b.winner() != p)
            || (a.offender() != Some(p) && b.offender() == Some(p))
        {
            return Ok(false);
        }
        if matches!((a, b), (State::Lost(_), State::Lost(_))) {
            continue;
        }
        stack.extend(alphabet.iter().map(|m| (a.step(m), b.step(m))));
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(spec: &[(char, u32)]) -> Vec<LabMove> {
        spec.iter()
            .map(|&(p, n)| {
                LabMove::new(
                    if p == 'T' {
                        Player::Machine
                    } else {
                        Player::Env
                    },
                    n.to_string(),
                )
            })
            .collect()
    }

    #[test]
    fn worked_delay_example() {
        let original = run(&[
            ('B', 0),
            ('T', 1),
            ('B', 2),
            ('T', 3),
            ('B', 4),
            ('T', 5),
            ('T', 6),
            ('B', 7),
            ('B', 8),
            ('T', 9),
            ('B', 10),
        ]);
        let delayed = run(&[
            ('B', 0),
            ('B', 2),
            ('T', 1),
            ('T', 3),
            ('B', 4),
            ('T', 5),
            ('B', 7),
            ('B', 8),
            ('T', 6),
            ('B', 10),
            ('T', 9),
        ]);
        assert!(is_delay(&delayed, &original, Player::Machine));
        assert!(!is_delay(&original, &delayed, Player::Machine));
        assert!(is_delay(&original, &delayed, Player::Env));
        assert!(p_delays(&original, Player::Machine).contains(&delayed));
    }

    #[test]
    fn delays_enumerated_are_delays() {
        let r = run(&[('T', 1), ('B', 2), ('T', 3), ('B', 4)]);
        let all = p_delays(&r, Player::Machine);
        assert!(all.contains(&r));
        for d in &all {
            assert!(is_delay(d, &r, Player::Machine));
        }
        assert_eq!(all.len(), 5);
    }

    /// Enumerates runs up to `len` and all their delays.
    fn static_by_enumeration(g: &GameTree, len: usize) -> bool {
        let mut alphabet = g.alphabet();
        alphabet.extend([Player::Machine, Player::Env].map(|p| LabMove::new(p, "#")));
        fn go(g: &GameTree, alphabet: &[LabMove], len: usize, run: &mut Vec<LabMove>) -> bool {
            let a = g.adjudicate(run);
            for p in [Player::Machine, Player::Env] {
                for d in p_delays(run, p) {
                    let b = g.adjudicate(&d);
                    if (a.winner == p && b.winner != p)
                        || (a.offender != Some(p) && b.offender == Some(p))
                    {
                        return false;
                    }
                }
            }
            run.len() == len
                || alphabet.iter().all(|m| {
                    run.push(m.clone());
                    let ok = go(g, alphabet, len, run);
                    run.pop();
                    ok
                })
        }
        go(g, &alphabet, len, &mut Vec::new())
    }

    #[test]
    fn static_check_matches_enumeration() {
        use crate::games::{catalogue, parallel};
        let small = catalogue::small_games(2);
        let mut games: Vec<GameTree> = small.iter().step_by(2).cloned().collect();
        for a in small.iter().filter(|g| g.depth() <= 1) {
            for b in small.iter().step_by(7) {
                games.push(parallel(&[a.clone(), b.clone()], true));
                games.push(parallel(&[a.clone(), b.negate()], false));
            }
        }
        games.extend(catalogue::named().into_values());
        let mut statics = 0;
        for g in &games {
            let fast = is_static(g, DEFAULT_STATIC_BOUND).unwrap();
            assert_eq!(fast, static_by_enumeration(g, g.depth() + 2), "{g:?}");
            statics += usize::from(fast);
        }
        assert!(statics > 0 && statics < games.len());
    }
}
