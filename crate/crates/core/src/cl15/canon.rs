use super::Cirquent15;
use crate::formula::Formula;

/// Exchange-invariant form of a cirquent: the least encoding over all
/// orderings of the oformulas that colour refinement cannot tell apart.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonKey {
    pub oformulas: Vec<String>,
    pub undergroups: Vec<Vec<usize>>,
    pub overgroups: Vec<Vec<usize>>,
}

pub fn canonical_key(c: &Cirquent15) -> CanonKey {
    canonical_key_with(c, false)
}

/// With `commutative`, oformulas are compared up to the order of the
/// arguments of `∧` and `∨`, the coarser reading of essential identity.
pub fn canonical_key_with(c: &Cirquent15, commutative: bool) -> CanonKey {
    let labels: Vec<String> = c
        .oformulas
        .iter()
        .map(|f| {
            if commutative {
                sorted_args(f).ascii()
            } else {
                f.ascii()
            }
        })
        .collect();
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    let mut colour = vec![0usize; labels.len()];
    for w in 1..order.len() {
        colour[order[w]] =
            colour[order[w - 1]] + usize::from(labels[order[w]] != labels[order[w - 1]]);
    }
    let mut best: Option<CanonKey> = None;
    search(c, &labels, refine(c, colour), &mut best);
    best.expect("at least one leaf")
}

fn sorted_args(f: &Formula) -> Formula {
    match f {
        Formula::Pand(v) | Formula::Por(v) => {
            let mut args: Vec<Formula> = v.iter().map(sorted_args).collect();
            args.sort_by_key(|g| g.ascii());
            if matches!(f, Formula::Pand(_)) {
                Formula::Pand(args)
            } else {
                Formula::Por(args)
            }
        }
        Formula::Brec(a) => Formula::brec(sorted_args(a)),
        Formula::Cobrec(a) => Formula::cobrec(sorted_args(a)),
        other => other.clone(),
    }
}

/// Splits colour classes by the colour multisets of the groups each
/// oformula belongs to, until stable. Colours stay ordered: a refined
/// colour never overtakes a smaller old one.
fn refine(c: &Cirquent15, mut colour: Vec<usize>) -> Vec<usize> {
    loop {
        let classes = count_classes(&colour);
        let group_sig = |g: &Vec<usize>| -> Vec<usize> {
            let mut s: Vec<usize> = g.iter().map(|&j| colour[j]).collect();
            s.sort();
            s
        };
        let under: Vec<Vec<usize>> = c.undergroups.iter().map(group_sig).collect();
        let over: Vec<Vec<usize>> = c.overgroups.iter().map(group_sig).collect();
        let sigs: Vec<(usize, Vec<&Vec<usize>>, Vec<&Vec<usize>>)> = (0..colour.len())
            .map(|i| {
                let mut u: Vec<&Vec<usize>> = (0..c.undergroups.len())
                    .filter(|&g| c.undergroups[g].contains(&i))
                    .map(|g| &under[g])
                    .collect();
                let mut o: Vec<&Vec<usize>> = (0..c.overgroups.len())
                    .filter(|&g| c.overgroups[g].contains(&i))
                    .map(|g| &over[g])
                    .collect();
                u.sort();
                o.sort();
                (colour[i], u, o)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<&Vec<usize>>, Vec<&Vec<usize>>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(&s).expect("present"))
            .collect();
        if count_classes(&next) == classes {
            return next;
        }
        colour = next;
    }
}

fn count_classes(colour: &[usize]) -> usize {
    let mut v = colour.to_vec();
    v.sort();
    v.dedup();
    v.len()
}

fn search(c: &Cirquent15, labels: &[String], colour: Vec<usize>, best: &mut Option<CanonKey>) {
    let n = colour.len();
    // the smallest colour shared by several oformulas
    let mut counts = vec![0usize; n];
    for &k in &colour {
        counts[k] += 1;
    }
    let Some(cell) = (0..n).find(|&k| counts[k] > 1) else {
        let key = encode(c, labels, &colour);
        if best.as_ref().is_none_or(|b| key < *b) {
            *best = Some(key);
        }
        return;
    };
    for v in (0..n).filter(|&i| colour[i] == cell) {
        // `v` keeps the cell's place, its rivals move just behind it
        let split: Vec<usize> = (0..n)
            .map(|i| 2 * colour[i] + usize::from(colour[i] == cell && i != v))
            .collect();
        let mut ranks = split.clone();
        ranks.sort();
        ranks.dedup();
        let compact = split
            .iter()
            .map(|x| ranks.binary_search(x).expect("present"))
            .collect();
        search(c, labels, refine(c, compact), best);
    }
}

fn encode(c: &Cirquent15, labels: &[String], colour: &[usize]) -> CanonKey {
    let mut oformulas = vec![String::new(); labels.len()];
    for (i, &k) in colour.iter().enumerate() {
        oformulas[k] = labels[i].clone();
    }
    let map = |gs: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = gs
            .iter()
            .map(|g| {
                let mut h: Vec<usize> = g.iter().map(|&j| colour[j]).collect();
                h.sort();
                h
            })
            .collect();
        out.sort();
        out
    };
    CanonKey {
        oformulas,
        undergroups: map(&c.undergroups),
        overgroups: map(&c.overgroups),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cl15::{apply_forward, Cl15Rule};
    use crate::formula::parse;

    fn cq(fs: &[&str], u: Vec<Vec<usize>>, o: Vec<Vec<usize>>) -> Cirquent15 {
        Cirquent15::new(
            fs.iter().map(|s| parse(s).unwrap().normalize()).collect(),
            u,
            o,
        )
        .unwrap()
    }

    #[test]
    fn exchange_invariance() {
        let c = cq(
            &["?~F", "F", "?~F", "F"],
            vec![vec![0, 1], vec![2, 3]],
            vec![vec![0, 1, 2, 3], vec![1]],
        );
        let k = canonical_key(&c);
        for rule in [
            Cl15Rule::ExchangeOformula { i: 0 },
            Cl15Rule::ExchangeOformula { i: 1 },
            Cl15Rule::ExchangeUnder { i: 0 },
            Cl15Rule::ExchangeOver { i: 0 },
        ] {
            assert_eq!(canonical_key(&apply_forward(&c, &rule).unwrap()), k);
        }
        let more = apply_forward(
            &c,
            &Cl15Rule::Weaken {
                under: 0,
                oformula: 2,
                new: None,
            },
        )
        .unwrap();
        assert_ne!(canonical_key(&more), k);
    }

    #[test]
    fn symmetric_structures_are_told_apart() {
        // same colours everywhere, different pairings
        let a = cq(
            &["~F", "~F", "F", "F"],
            vec![vec![0, 2], vec![1, 3]],
            vec![vec![0, 2], vec![1, 3]],
        );
        let b = cq(
            &["~F", "~F", "F", "F"],
            vec![vec![0, 2], vec![1, 3]],
            vec![vec![0, 3], vec![1, 2]],
        );
        assert_ne!(canonical_key(&a), canonical_key(&b));
        let a2 = cq(
            &["~F", "~F", "F", "F"],
            vec![vec![1, 3], vec![0, 2]],
            vec![vec![1, 3], vec![0, 2]],
        );
        assert_eq!(canonical_key(&a), canonical_key(&a2));
    }

    #[test]
    fn formula_order_matters_unless_coarse() {
        let a = Cirquent15::target(&parse("A | (B & B)").unwrap()).unwrap();
        let b = Cirquent15::target(&parse("(B & B) | A").unwrap()).unwrap();
        assert_ne!(canonical_key(&a), canonical_key(&b));
        assert_eq!(canonical_key_with(&a, true), canonical_key_with(&b, true));
    }
}
