mod common;

use colkit::formula::{elementarise, is_stable, is_tautology, surface_sites, Style};
use colkit::{parse, Atom, Formula};
use common::*;
use proptest::prelude::*;
use std::collections::BTreeMap;

fn occurrences(f: &Formula) -> BTreeMap<Atom, usize> {
    let mut out = BTreeMap::new();
    fn go(f: &Formula, out: &mut BTreeMap<Atom, usize>) {
        if let Formula::Lit { atom, .. } = f {
            *out.entry(atom.clone()).or_default() += 1;
        }
        for c in f.children() {
            go(c, out);
        }
    }
    go(f, &mut out);
    out
}

fn elementary_only(f: &Formula) -> bool {
    match f {
        Formula::True | Formula::False => true,
        Formula::Lit { atom, .. } => atom.is_elementary(),
        Formula::Not(a) => elementary_only(a),
        Formula::Pand(v) | Formula::Por(v) => v.iter().all(elementary_only),
        _ => false,
    }
}

proptest! {
    #![proptest_config(config(512))]

    #[test]
    fn render_then_parse_is_identity(f in formula(&["p", "q", "P", "F"], ALL, 4)) {
        for style in [Style::Ascii, Style::Unicode] {
            let text = f.render(style);
            prop_assert_eq!(parse(&text).unwrap(), f.clone(), "{}", text);
        }
    }

    #[test]
    fn normalize_is_idempotent_and_keeps_atoms(f in formula(&["p", "q", "P", "F"], ALL, 4)) {
        let n = f.normalize();
        prop_assert!(n.is_normal());
        prop_assert_eq!(n.normalize(), n.clone());
        prop_assert_eq!(occurrences(&n), occurrences(&f));
    }

    #[test]
    fn elementarise_yields_elementary_formulas(f in formula(&["p", "q", "P", "Q"], CL1, 4)) {
        let e = elementarise(&f).unwrap();
        prop_assert!(elementary_only(&e), "{}", e);
    }

    #[test]
    fn stability_of_elementary_formulas_is_tautologyhood(f in formula(&["p", "q", "r"], CLASSICAL, 4)) {
        prop_assert_eq!(is_stable(&f).unwrap(), is_tautology(&f).unwrap());
    }

    #[test]
    fn recurrence_complexity_of_implications(
        a in formula(&["F", "G"], ALL, 3),
        b in formula(&["F", "G"], ALL, 3),
    ) {
        let (ra, rb) = (a.normalize().recurrence_complexity(), b.normalize().recurrence_complexity());
        prop_assert_eq!(Formula::implies(a.clone(), b.clone()).normalize().recurrence_complexity(), ra + rb);
        prop_assert_eq!(Formula::brimpl(a, b).normalize().recurrence_complexity(), ra + rb + 1);
    }

    #[test]
    fn surface_sites_come_in_path_order(f in formula(&["p", "P"], ALL, 4)) {
        let sites = surface_sites(&f, &|_| true);
        prop_assert_eq!(sites.len(), f.size());
        prop_assert!(sites.windows(2).all(|w| w[0].path < w[1].path));
        for s in &sites {
            prop_assert_eq!(f.subformula(&s.path), Some(&s.subformula));
        }
    }

    #[test]
    fn parser_never_panics(s in "[pqPF~&|*+!?()<>o -]{0,24}") {
        let _ = parse(&s);
    }
}

#[test]
fn worked_examples_parse() {
    let f = parse("((p -> q) * (p -> r)) -> (p -> (q * r))").unwrap();
    assert_eq!(f.unicode(), "(p → q) ⊓ (p → r) → p → q ⊓ r");
    assert!(parse("p &").is_err());
    assert!(parse("~~P | ?!F").is_ok());
}
