use crate::formula::{var_words, Atom, Formula};
use std::collections::BTreeMap;

/// Postfix program over literal occurrences.
enum Op {
    Lit(usize, bool),
    And(usize),
    Or(usize),
}

fn compile(f: &Formula, occ: &mut Vec<(Atom, bool)>, out: &mut Vec<Op>) {
    match f {
        Formula::Lit { atom, negated } => {
            out.push(Op::Lit(occ.len(), *negated));
            occ.push((atom.clone(), *negated));
        }
        Formula::Pand(v) | Formula::Por(v) => {
            for g in v {
                compile(g, occ, out);
            }
            out.push(if matches!(f, Formula::Pand(_)) {
                Op::And(v.len())
            } else {
                Op::Or(v.len())
            });
        }
        _ => panic!("decide_binary expects a normalized and/or formula"),
    }
}

/// Whether the skeleton naming occurrence `k` by atom `names[k]` is a
/// classical tautology.
fn skeleton_tautology(prog: &[Op], names: &[usize]) -> bool {
    let mut ids: Vec<usize> = names.to_vec();
    ids.sort();
    ids.dedup();
    let n = ids.len();
    let tables: Vec<Vec<u64>> = (0..n).map(|i| var_words(i, n)).collect();
    let words = tables.first().map_or(1, Vec::len);
    let mut stack: Vec<Vec<u64>> = Vec::new();
    for op in prog {
        match *op {
            Op::Lit(k, neg) => {
                let t = &tables[ids.binary_search(&names[k]).expect("named")];
                stack.push(if neg {
                    t.iter().map(|w| !w).collect()
                } else {
                    t.clone()
                });
            }
            Op::And(m) | Op::Or(m) => {
                let args = stack.split_off(stack.len() - m);
                let mut acc = args[0].clone();
                for a in &args[1..] {
                    for (x, y) in acc.iter_mut().zip(a) {
                        if matches!(op, Op::And(_)) {
                            *x &= y
                        } else {
                            *x |= y
                        }
                    }
                }
                stack.push(acc);
            }
        }
    }
    let top = stack.pop().expect("one value");
    let rows = 1usize << n;
    let last = if rows % 64 == 0 {
        u64::MAX
    } else {
        (1u64 << (rows % 64)) - 1
    };
    (0..words).all(|w| {
        let want = if w + 1 == words { last } else { u64::MAX };
        top[w] & want == want
    })
}

/// CL5 provability by the normal-binary method: some way of identifying
/// disjoint pairs of opposite occurrences of the same atom, every other
/// occurrence getting an atom of its own, yields a classical tautology.
///
/// Identifying more pairs only removes assignments, so only matchings that
/// cannot be extended are tried.
pub fn decide_binary(f: &Formula) -> bool {
    let g = f.normalize();
    let mut occ = Vec::new();
    let mut prog = Vec::new();
    compile(&g, &mut occ, &mut prog);
    let mut by_atom: BTreeMap<&Atom, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (k, (a, neg)) in occ.iter().enumerate() {
        let e = by_atom.entry(a).or_default();
        if *neg {
            e.1.push(k);
        } else {
            e.0.push(k);
        }
    }
    // the smaller side of each atom is matched injectively into the larger
    let groups: Vec<(Vec<usize>, Vec<usize>)> = by_atom
        .into_values()
        .map(|(p, n)| if p.len() <= n.len() { (p, n) } else { (n, p) })
        .collect();
    let mut names: Vec<usize> = (0..occ.len()).collect();
    try_atoms(&prog, &groups, 0, &mut names)
}

fn try_atoms(
    prog: &[Op],
    groups: &[(Vec<usize>, Vec<usize>)],
    gi: usize,
    names: &mut Vec<usize>,
) -> bool {
    if gi == groups.len() {
        return skeleton_tautology(prog, names);
    }
    let (small, large) = &groups[gi];
    let mut used = vec![false; large.len()];
    match_small(prog, groups, gi, small, large, 0, &mut used, names)
}

#[allow(clippy::too_many_arguments)]
fn match_small(
    prog: &[Op],
    groups: &[(Vec<usize>, Vec<usize>)],
    gi: usize,
    small: &[usize],
    large: &[usize],
    si: usize,
    used: &mut Vec<bool>,
    names: &mut Vec<usize>,
) -> bool {
    if si == small.len() {
        return try_atoms(prog, groups, gi + 1, names);
    }
    for li in 0..large.len() {
        if used[li] {
            continue;
        }
        used[li] = true;
        let saved = names[large[li]];
        names[large[li]] = names[small[si]];
        let ok = match_small(prog, groups, gi, small, large, si + 1, used, names);
        names[large[li]] = saved;
        used[li] = false;
        if ok {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn binary_decisions() {
        for (src, want) in [
            ("~P | P", true),
            ("~P | (P & P)", false),
            ("(~P & ~P) | P", false),
            ("~P | ~P | P", true),
            ("((~P | ~Q) & (~R | ~S)) | ((P | R) & (Q | S))", true),
            ("(P & Q) | ~P | ~Q", true),
            ("P | Q", false),
        ] {
            assert_eq!(decide_binary(&parse(src).unwrap()), want, "{src}");
        }
    }
}
