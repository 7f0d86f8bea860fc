#![allow(dead_code)]

use colkit::formula::Conn;
use colkit::games::{catalogue, is_static, GameTree, DEFAULT_STATIC_BOUND};
use colkit::{Atom, Formula};
use proptest::prelude::*;
use proptest::strategy::Union;

pub const ALL: &[Conn] = &[
    Conn::Not,
    Conn::Pand,
    Conn::Por,
    Conn::Chand,
    Conn::Chor,
    Conn::Brec,
    Conn::Cobrec,
    Conn::Impl,
    Conn::Brimpl,
];
pub const CL1: &[Conn] = &[
    Conn::Not,
    Conn::Pand,
    Conn::Por,
    Conn::Chand,
    Conn::Chor,
    Conn::Impl,
];
pub const CLASSICAL: &[Conn] = &[Conn::Not, Conn::Pand, Conn::Por, Conn::Impl];
pub const AND_OR: &[Conn] = &[Conn::Not, Conn::Pand, Conn::Por];
pub const RECURRENCE: &[Conn] = &[Conn::Pand, Conn::Por, Conn::Brec, Conn::Cobrec];

/// Formulas over `atoms` built from `conns`, with literals at the leaves
/// and up to `depth` levels of nesting.
pub fn formula(
    atoms: &'static [&'static str],
    conns: &'static [Conn],
    depth: u32,
) -> BoxedStrategy<Formula> {
    let leaf = (prop::sample::select(atoms), any::<bool>())
        .prop_map(|(a, neg)| Formula::lit(Atom::new(a), neg))
        .boxed();
    leaf.prop_recursive(depth, 32, 3, move |inner| {
        let args = prop::collection::vec(inner.clone(), 2..=3);
        let arms: Vec<BoxedStrategy<Formula>> = conns
            .iter()
            .map(|&c| match c {
                Conn::Not => inner.clone().prop_map(Formula::not).boxed(),
                Conn::Pand => args.clone().prop_map(Formula::Pand).boxed(),
                Conn::Por => args.clone().prop_map(Formula::Por).boxed(),
                Conn::Chand => args.clone().prop_map(Formula::Chand).boxed(),
                Conn::Chor => args.clone().prop_map(Formula::Chor).boxed(),
                Conn::Brec => inner.clone().prop_map(Formula::brec).boxed(),
                Conn::Cobrec => inner.clone().prop_map(Formula::cobrec).boxed(),
                Conn::Impl => (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Formula::implies(a, b))
                    .boxed(),
                Conn::Brimpl => (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Formula::brimpl(a, b))
                    .boxed(),
                other => panic!("no generator for {other:?}"),
            })
            .collect();
        Union::new(arms).boxed()
    })
    .boxed()
}

/// Kind-preserving renamings of `atoms` into themselves.
pub fn renaming(
    atoms: &'static [&'static str],
) -> BoxedStrategy<std::collections::BTreeMap<Atom, Atom>> {
    prop::collection::vec(prop::sample::select(atoms), atoms.len())
        .prop_map(move |targets| {
            atoms
                .iter()
                .zip(targets)
                .filter(|(a, b)| Atom::new(a).kind() == Atom::new(b).kind())
                .map(|(a, b)| (Atom::new(a), Atom::new(b)))
                .collect()
        })
        .boxed()
}

/// The catalogue games that are static.
pub fn static_games() -> Vec<(String, GameTree)> {
    catalogue::named()
        .into_iter()
        .filter(|(_, g)| is_static(g, DEFAULT_STATIC_BOUND).unwrap_or(false))
        .collect()
}

pub fn literal_count(f: &Formula) -> usize {
    f.count(&|g| g.is_literal())
}

/// Proptest settings without a regressions file.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}
