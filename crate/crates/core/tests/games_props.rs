mod common;

use colkit::formula::eval_elementary;
use colkit::games::{
    interpret, is_static, play_match, solve, verify_strategy, GameTree, Interpretation, LabMove,
    Pass, Player, RandomAdversary, DEFAULT_STATIC_BOUND,
};
use colkit::{Atom, Formula};
use common::*;
use proptest::prelude::*;
use std::collections::BTreeMap;

/// `p`, `q` truth values and `P`, `Q` drawn from the static catalogue.
fn interpretation() -> impl Strategy<Value = Interpretation> {
    let n = static_games().len();
    (any::<bool>(), any::<bool>(), 0..n, 0..n).prop_map(|(p, q, a, b)| {
        let games = static_games();
        Interpretation::new()
            .with_value("p", p)
            .with_value("q", q)
            .with_game("P", games[a].1.clone())
            .with_game("Q", games[b].1.clone())
    })
}

/// Small enough that parallel products stay a few thousand positions.
fn small_formula(literals: usize) -> BoxedStrategy<Formula> {
    formula(&["p", "q", "P", "Q"], CL1, 3)
        .prop_filter("few literals", move |f| literal_count(f) <= literals)
        .boxed()
}

fn choice_formula() -> BoxedStrategy<Formula> {
    small_formula(4)
}

/// A legal run picked by `path`, one edge index per step.
fn legal_run(g: &GameTree, path: &[usize]) -> Vec<LabMove> {
    let mut cur = g.clone();
    let mut run = Vec::new();
    for &k in path {
        if cur.edges().is_empty() {
            break;
        }
        let e = &cur.edges()[k % cur.edges().len()];
        run.push(LabMove::new(e.by, e.mv.clone()));
        cur = e.to.clone();
    }
    run
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn double_negation(f in choice_formula(), itp in interpretation()) {
        let g = interpret(&f, &itp).unwrap();
        prop_assert!(interpret(&Formula::not(Formula::not(f.clone())), &itp).unwrap() == g);
        prop_assert!(g.negate().negate() == g);
    }

    #[test]
    fn de_morgan(a in small_formula(3), b in small_formula(2), itp in interpretation()) {
        let na = Formula::not(a.clone());
        let nb = Formula::not(b.clone());
        let pairs = [
            (Formula::Chand(vec![a.clone(), b.clone()]), Formula::Chor(vec![na.clone(), nb.clone()])),
            (Formula::Chor(vec![a.clone(), b.clone()]), Formula::Chand(vec![na.clone(), nb.clone()])),
            (Formula::Pand(vec![a.clone(), b.clone()]), Formula::Por(vec![na.clone(), nb.clone()])),
            (Formula::Por(vec![a, b]), Formula::Pand(vec![na, nb])),
        ];
        for (f, dual) in pairs {
            let neg = interpret(&Formula::not(f.clone()), &itp).unwrap();
            // game trees are shared DAGs; printing them on failure would not finish
            prop_assert!(neg == interpret(&dual, &itp).unwrap(), "¬({}) vs {}", f, dual);
            prop_assert!(neg == interpret(&f, &itp).unwrap().negate(), "¬({}) vs negated game", f);
        }
    }

    #[test]
    fn empty_run_of_an_elementary_game_is_its_truth_value(
        f in formula(&["p", "q", "r"], CLASSICAL, 4),
        values in prop::array::uniform3(any::<bool>()),
    ) {
        let mut itp = Interpretation::new();
        let mut assignment = BTreeMap::new();
        for (a, v) in ["p", "q", "r"].iter().zip(values) {
            itp = itp.with_value(a, v);
            assignment.insert(Atom::new(a), v);
        }
        let g = interpret(&f, &itp).unwrap();
        prop_assert!(g.edges().is_empty());
        let truth = eval_elementary(&f, &assignment).unwrap();
        prop_assert_eq!(g.adjudicate(&[]).winner, Player::from_bool(truth));
    }

    #[test]
    fn prefixation_composes(
        f in choice_formula(),
        itp in interpretation(),
        path in prop::collection::vec(any::<usize>(), 0..8),
        cut in any::<prop::sample::Index>(),
    ) {
        let g = interpret(&f, &itp).unwrap();
        let run = legal_run(&g, &path);
        let k = cut.index(run.len() + 1);
        let whole = g.prefixation(&run).unwrap();
        let stepwise = g.prefixation(&run[..k]).unwrap().prefixation(&run[k..]).unwrap();
        prop_assert!(whole == stepwise);
    }

    #[test]
    fn winning_strategies_win_matches(f in choice_formula(), itp in interpretation(), seed in any::<u64>()) {
        let g = interpret(&f, &itp).unwrap();
        if let Some(policy) = solve(&g) {
            prop_assert!(verify_strategy(&g, &policy).is_ok());
            let steps = 2 * g.depth() + 2;
            prop_assert_eq!(play_match(&g, &policy, &Pass, steps).winner, Player::Machine);
            let env = RandomAdversary { game: g.clone(), player: Player::Env, seed };
            prop_assert_eq!(play_match(&g, &policy, &env, steps).winner, Player::Machine);
        }
    }

    #[test]
    fn interpreted_games_are_static(f in choice_formula(), itp in interpretation()) {
        let g = interpret(&f, &itp).unwrap();
        prop_assert!(is_static(&g, DEFAULT_STATIC_BOUND).unwrap());
    }
}

#[test]
fn static_catalogue() {
    let names: Vec<String> = static_games().into_iter().map(|(n, _)| n).collect();
    assert_eq!(
        names,
        ["B", "T", "choose_B", "choose_T", "commit", "question"]
    );
}
