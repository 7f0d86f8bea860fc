mod common;

use colkit::bruteforce::{check_proof, decide, BfProof, Outcome, ProofStrategy, DEFAULT_BUDGET};
use colkit::formula::is_tautology;
use colkit::games::{interpret, verify_strategy, Interpretation};
use colkit::{parse, Formula, SystemId};
use common::*;
use proptest::prelude::*;

fn run(f: &Formula, system: SystemId) -> Outcome {
    decide(f, system, DEFAULT_BUDGET).unwrap()
}

/// Every interpretation of `p`, `q` by truth values and of `P` by a static
/// catalogue game.
fn interpretations() -> Vec<Interpretation> {
    let mut out = Vec::new();
    for (_, g) in static_games() {
        for row in 0..4 {
            out.push(
                Interpretation::new()
                    .with_value("p", row & 1 == 1)
                    .with_value("q", row & 2 == 2)
                    .with_game("P", g.clone()),
            );
        }
    }
    out
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn elementary_completeness(f in formula(&["p", "q", "r"], CLASSICAL, 3)) {
        prop_assert_eq!(run(&f, SystemId::Cl1).is_provable(), is_tautology(&f).unwrap());
    }

    #[test]
    fn cl2_is_conservative_over_cl1(f in formula(&["p", "q"], CL1, 3)) {
        prop_assert_eq!(run(&f, SystemId::Cl2).is_provable(), run(&f, SystemId::Cl1).is_provable());
    }

    #[test]
    fn theorems_are_closed_under_renaming(
        f in formula(&["p", "q", "P", "Q"], CL1, 3),
        sigma in renaming(&["p", "q", "P", "Q"]),
    ) {
        let Ok(Outcome::Provable(_)) = decide(&f, SystemId::Cl2, DEFAULT_BUDGET) else { return Ok(()) };
        let g = f.rename_atoms(&sigma);
        match decide(&g, SystemId::Cl2, DEFAULT_BUDGET).unwrap() {
            Outcome::Provable(_) => {}
            Outcome::ResourceExhausted { .. } => prop_assume!(false),
            Outcome::Unprovable => prop_assert!(false, "{} proved but {} not", f, g),
        }
    }

    #[test]
    fn proofs_check_and_their_strategies_win(
        f in formula(&["p", "q", "P"], CL1, 3).prop_filter("at most 5 literals", |f| literal_count(f) <= 5),
    ) {
        let Outcome::Provable(proof) = run(&f, SystemId::Cl2) else { return Ok(()) };
        prop_assert!(check_proof(&proof).is_ok());
        prop_assert_eq!(&BfProof::from_json(&proof.to_json()).unwrap(), &proof);
        let s = ProofStrategy::new(proof);
        for itp in interpretations() {
            prop_assert!(verify_strategy(&interpret(&f, &itp).unwrap(), &s).is_ok(), "{}", f);
        }
    }
}

#[test]
fn worked_examples() {
    let f = parse("((p -> q) * (p -> r)) -> (p -> (q * r))").unwrap();
    let Outcome::Provable(p) = run(&f, SystemId::Cl1) else {
        panic!("not provable")
    };
    assert_eq!(p.steps.len(), 5);
    let Outcome::Provable(p) = run(&parse("P & P -> P").unwrap(), SystemId::Cl2) else {
        panic!("not provable")
    };
    assert_eq!(p.steps.len(), 2);
    assert!(matches!(
        run(&parse("P -> P & P").unwrap(), SystemId::Cl2),
        Outcome::Unprovable
    ));
    assert!(matches!(
        run(&parse("p + ~p").unwrap(), SystemId::Cl1),
        Outcome::Unprovable
    ));
    // general atoms are outside the language of CL1
    assert!(decide(&parse("P | ~P").unwrap(), SystemId::Cl1, DEFAULT_BUDGET).is_err());
}
