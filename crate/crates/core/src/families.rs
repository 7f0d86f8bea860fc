//! Exhaustive and random formula families for cross-checking the deciders.

use crate::formula::{Atom, Formula};
use rand::Rng;
use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashSet};
use std::hash::{Hash, Hasher};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Pand,
    Por,
    Chand,
    Chor,
}

fn node(op: Op, a: Formula, b: Formula) -> Formula {
    match op {
        Op::Pand => Formula::Pand(vec![a, b]),
        Op::Por => Formula::Por(vec![a, b]),
        Op::Chand => Formula::Chand(vec![a, b]),
        Op::Chor => Formula::Chor(vec![a, b]),
    }
}

/// Every formula built from `atoms`, negation and the binary connectives in
/// `ops` with at most `max_conn` connective occurrences, arguments of each
/// binary node taken in one order only. Results are normalized and
/// deduplicated, including up to swapping the first two atoms.
pub fn choice_family(atoms: &[&str], ops: &[Op], max_conn: usize) -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = vec![atoms.iter().map(|a| Formula::atom(a)).collect()];
    for c in 1..=max_conn {
        let mut level = Vec::new();
        for f in &by_size[c - 1] {
            level.push(match f {
                Formula::Lit {
                    atom,
                    negated: false,
                } => Formula::lit(atom.clone(), true),
                other => Formula::not(other.clone()),
            });
        }
        for c1 in 0..c {
            let c2 = c - 1 - c1;
            if c1 > c2 {
                break;
            }
            for (i, a) in by_size[c1].iter().enumerate() {
                let start = if c1 == c2 { i } else { 0 };
                for b in &by_size[c2][start..] {
                    for &op in ops {
                        level.push(node(op, a.clone(), b.clone()));
                    }
                }
            }
        }
        by_size.push(level);
    }
    let swap: BTreeMap<Atom, Atom> = if atoms.len() >= 2 {
        [
            (Atom::new(atoms[0]), Atom::new(atoms[1])),
            (Atom::new(atoms[1]), Atom::new(atoms[0])),
        ]
        .into()
    } else {
        BTreeMap::new()
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for f in by_size.into_iter().flatten() {
        let g = f.normalize();
        let h = g.rename_atoms(&swap);
        let key = if h < g { h } else { g.clone() };
        if seen.insert(key) {
            out.push(g);
        }
    }
    out
}

/// Unlabelled and/or trees with `leaves` leaves, flattened (no node has a
/// child with the same connective) and with children in sorted order.
fn shapes(
    leaves: usize,
    root_and: bool,
    memo: &mut BTreeMap<(usize, bool), Vec<Shape>>,
) -> Vec<Shape> {
    if let Some(v) = memo.get(&(leaves, root_and)) {
        return v.clone();
    }
    let mut out = Vec::new();
    if leaves == 1 {
        out.push(Shape::Leaf);
    } else {
        // children are leaves or nodes of the other connective, as a multiset
        let mut kids: Vec<(usize, Shape)> = Vec::new();
        for n in 1..leaves {
            for s in shapes(n, !root_and, memo) {
                kids.push((n, s));
            }
        }
        kids.sort();
        let mut cur = Vec::new();
        multisets(&kids, 0, leaves, &mut cur, &mut |ms: &[(
            usize,
            Shape,
        )]| {
            if ms.len() >= 2 {
                out.push(Shape::Node(
                    root_and,
                    ms.iter().map(|(_, s)| s.clone()).collect(),
                ));
            }
        });
    }
    memo.insert((leaves, root_and), out.clone());
    out
}

fn multisets(
    kids: &[(usize, Shape)],
    from: usize,
    left: usize,
    cur: &mut Vec<(usize, Shape)>,
    emit: &mut dyn FnMut(&[(usize, Shape)]),
) {
    if left == 0 {
        emit(cur);
        return;
    }
    for i in from..kids.len() {
        let (n, _) = kids[i];
        if n <= left {
            cur.push(kids[i].clone());
            multisets(kids, i, left - n, cur, emit);
            cur.pop();
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Shape {
    Leaf,
    /// `true` for conjunction.
    Node(bool, Vec<Shape>),
}

fn leaf_count(s: &Shape) -> usize {
    match s {
        Shape::Leaf => 1,
        Shape::Node(_, v) => v.iter().map(leaf_count).sum(),
    }
}

fn label(s: &Shape, lits: &[(usize, bool)], next: &mut usize, names: &[Atom]) -> Formula {
    match s {
        Shape::Leaf => {
            let (a, neg) = lits[*next];
            *next += 1;
            Formula::lit(names[a].clone(), neg)
        }
        Shape::Node(and, v) => {
            let args = v.iter().map(|c| label(c, lits, next, names)).collect();
            if *and {
                Formula::Pand(args)
            } else {
                Formula::Por(args)
            }
        }
    }
}

/// Sorts arguments of every node, then renames atoms and flips polarities
/// so that atoms first occur positively and in order; repeated until stable.
fn canonical(f: &Formula, names: &[Atom]) -> Formula {
    fn sort(f: &Formula) -> Formula {
        match f {
            Formula::Pand(v) | Formula::Por(v) => {
                let mut args: Vec<Formula> = v.iter().map(sort).collect();
                args.sort();
                if matches!(f, Formula::Pand(_)) {
                    Formula::Pand(args)
                } else {
                    Formula::Por(args)
                }
            }
            _ => f.clone(),
        }
    }
    fn relabel(f: &Formula, map: &mut Vec<(Atom, Atom, bool)>, names: &[Atom]) -> Formula {
        match f {
            Formula::Lit { atom, negated } => {
                if let Some((_, to, flip)) = map.iter().find(|(from, _, _)| from == atom) {
                    return Formula::lit(to.clone(), negated != flip);
                }
                let to = names[map.len()].clone();
                map.push((atom.clone(), to.clone(), *negated));
                Formula::lit(to, false)
            }
            Formula::Pand(v) => Formula::Pand(v.iter().map(|g| relabel(g, map, names)).collect()),
            Formula::Por(v) => Formula::Por(v.iter().map(|g| relabel(g, map, names)).collect()),
            _ => f.clone(),
        }
    }
    let mut cur = f.clone();
    for _ in 0..4 {
        let next = sort(&relabel(&sort(&cur), &mut Vec::new(), names));
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

/// Every `∧`/`∨` formula with `1..=max_leaves` literal occurrences over up
/// to `atoms.len()` atoms, up to associativity, commutativity, renaming of
/// atoms and swapping an atom's polarity. `visit` gets one representative of
/// each class found; the same class may rarely be visited twice.
pub fn and_or_family(atoms: &[&str], max_leaves: usize, visit: &mut dyn FnMut(&Formula)) -> usize {
    let names: Vec<Atom> = atoms.iter().map(|a| Atom::new(a)).collect();
    let mut memo = BTreeMap::new();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut visited = 0;
    for leaves in 1..=max_leaves {
        let mut all = shapes(leaves, true, &mut memo);
        if leaves > 1 {
            all.extend(shapes(leaves, false, &mut memo));
        }
        for s in &all {
            debug_assert_eq!(leaf_count(s), leaves);
            let mut lits = Vec::with_capacity(leaves);
            labelings(leaves, names.len(), 0, &mut lits, &mut |lits: &[(
                usize,
                bool,
            )]| {
                let f = label(s, lits, &mut 0, &names);
                let c = canonical(&f, &names);
                let mut h = DefaultHasher::new();
                c.hash(&mut h);
                if seen.insert(h.finish()) {
                    visited += 1;
                    visit(&c);
                }
            });
        }
    }
    visited
}

/// Restricted-growth literal sequences: atom `k` may appear only after atom
/// `k-1`, and its first occurrence is positive.
fn labelings(
    len: usize,
    atoms: usize,
    used: usize,
    cur: &mut Vec<(usize, bool)>,
    emit: &mut dyn FnMut(&[(usize, bool)]),
) {
    if cur.len() == len {
        emit(cur);
        return;
    }
    for a in 0..used {
        for neg in [false, true] {
            cur.push((a, neg));
            labelings(len, atoms, used, cur, emit);
            cur.pop();
        }
    }
    if used < atoms {
        cur.push((used, false));
        labelings(len, atoms, used + 1, cur, emit);
        cur.pop();
    }
}

/// A random formula with at most `max_conn` connective occurrences.
pub fn random_formula<R: Rng>(rng: &mut R, atoms: &[&str], ops: &[Op], max_conn: usize) -> Formula {
    let budget = rng.gen_range(0..=max_conn);
    random_sized(rng, atoms, ops, budget)
}

fn random_sized<R: Rng>(rng: &mut R, atoms: &[&str], ops: &[Op], conn: usize) -> Formula {
    if conn == 0 {
        return Formula::atom(atoms[rng.gen_range(0..atoms.len())]);
    }
    if rng.gen_bool(0.2) {
        let inner = random_sized(rng, atoms, ops, conn - 1);
        return match inner {
            Formula::Lit {
                atom,
                negated: false,
            } => Formula::lit(atom, true),
            other => Formula::not(other),
        };
    }
    let left = rng.gen_range(0..conn);
    let a = random_sized(rng, atoms, ops, left);
    let b = random_sized(rng, atoms, ops, conn - 1 - left);
    node(ops[rng.gen_range(0..ops.len())], a, b)
}

/// A random formula over `∧`, `∨`, `○`, `⫰` and negated atoms with at most
/// `max_conn` connective occurrences, for the CL15 checks.
pub fn random_recurrence_formula<R: Rng>(rng: &mut R, atoms: &[&str], max_conn: usize) -> Formula {
    let budget = rng.gen_range(0..=max_conn);
    recurrence_sized(rng, atoms, budget)
}

fn recurrence_sized<R: Rng>(rng: &mut R, atoms: &[&str], conn: usize) -> Formula {
    if conn == 0 {
        return Formula::lit(
            Atom::new(atoms[rng.gen_range(0..atoms.len())]),
            rng.gen_bool(0.5),
        );
    }
    match rng.gen_range(0..4) {
        0 => Formula::brec(recurrence_sized(rng, atoms, conn - 1)),
        1 => Formula::cobrec(recurrence_sized(rng, atoms, conn - 1)),
        k => {
            let left = rng.gen_range(0..conn);
            let a = recurrence_sized(rng, atoms, left);
            let b = recurrence_sized(rng, atoms, conn - 1 - left);
            if k == 2 {
                Formula::Pand(vec![a, b])
            } else {
                Formula::Por(vec![a, b])
            }
        }
    }
}
