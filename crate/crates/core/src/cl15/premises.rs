use super::{drop_position, Cirquent15, Cl15Rule, NewOformula};
use crate::formula::Formula;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RuleTag {
    A,
    #[serde(rename = "E-under")]
    EUnder,
    #[serde(rename = "E-oformula")]
    EOformula,
    #[serde(rename = "E-over")]
    EOver,
    W,
    C,
    #[serde(rename = "D-under")]
    DUnder,
    #[serde(rename = "D-over")]
    DOver,
    M,
    OrI,
    AndI,
    RecI,
    CorecI,
}

impl RuleTag {
    pub const ALL: [RuleTag; 13] = [
        RuleTag::A,
        RuleTag::EUnder,
        RuleTag::EOformula,
        RuleTag::EOver,
        RuleTag::W,
        RuleTag::C,
        RuleTag::DUnder,
        RuleTag::DOver,
        RuleTag::M,
        RuleTag::OrI,
        RuleTag::AndI,
        RuleTag::RecI,
        RuleTag::CorecI,
    ];
}

/// Every `(premise, instance)` whose forward application gives `c`.
pub fn enumerate_premises(c: &Cirquent15, tag: RuleTag) -> Vec<(Cirquent15, Cl15Rule)> {
    let n = c.oformulas.len();
    let mut out = Vec::new();
    match tag {
        RuleTag::A => {}
        RuleTag::EOformula => {
            for i in 0..n.saturating_sub(1) {
                out.push((c.swap_oformulas(i), Cl15Rule::ExchangeOformula { i }));
            }
        }
        RuleTag::EUnder => {
            for i in 0..c.undergroups.len().saturating_sub(1) {
                let mut p = c.clone();
                p.undergroups.swap(i, i + 1);
                out.push((p, Cl15Rule::ExchangeUnder { i }));
            }
        }
        RuleTag::EOver => {
            for i in 0..c.overgroups.len().saturating_sub(1) {
                let mut p = c.clone();
                p.overgroups.swap(i, i + 1);
                out.push((p, Cl15Rule::ExchangeOver { i }));
            }
        }
        RuleTag::W => {
            for u in 0..c.undergroups.len() {
                if c.undergroups[u].len() < 2 {
                    continue;
                }
                for &j in &c.undergroups[u] {
                    out.push(weaken_inverse(c, u, j));
                }
            }
        }
        RuleTag::C => {
            for i in 0..n {
                if matches!(c.oformulas[i], Formula::Cobrec(_)) {
                    out.push((
                        c.split_oformula(i, vec![c.oformulas[i].clone(); 2]),
                        Cl15Rule::Contraction { i },
                    ));
                }
            }
        }
        RuleTag::DUnder => {
            for i in 0..c.undergroups.len().saturating_sub(1) {
                if c.undergroups[i] == c.undergroups[i + 1] {
                    let mut p = c.clone();
                    p.undergroups.remove(i + 1);
                    out.push((p, Cl15Rule::DuplicateUnder { i }));
                }
            }
        }
        RuleTag::DOver => {
            for i in 0..c.overgroups.len().saturating_sub(1) {
                if c.overgroups[i] == c.overgroups[i + 1] {
                    let mut p = c.clone();
                    p.overgroups.remove(i + 1);
                    out.push((p, Cl15Rule::DuplicateOver { i }));
                }
            }
        }
        RuleTag::M => {
            for i in 0..c.overgroups.len() {
                for (a, b) in covers(&c.overgroups[i]) {
                    let mut p = c.clone();
                    p.overgroups[i] = a;
                    p.overgroups.insert(i + 1, b);
                    out.push((p, Cl15Rule::Merge { i }));
                }
            }
        }
        RuleTag::OrI => {
            for i in 0..n {
                if let Formula::Por(v) = &c.oformulas[i] {
                    out.push(or_inverse(c, i, v));
                }
            }
        }
        RuleTag::AndI => {
            for i in 0..n {
                if let Formula::Pand(v) = &c.oformulas[i] {
                    out.push(and_inverse(c, i, v));
                }
            }
        }
        RuleTag::RecI => {
            for i in 0..n {
                if matches!(c.oformulas[i], Formula::Brec(_)) {
                    for k in 0..=c.overgroups.len() {
                        out.push(rec_inverse(c, i, k));
                    }
                }
            }
        }
        RuleTag::CorecI => {
            for i in 0..n {
                if matches!(c.oformulas[i], Formula::Cobrec(_)) {
                    let free: Vec<usize> = (0..c.overgroups.len())
                        .filter(|&o| !c.overgroups[o].contains(&i))
                        .collect();
                    for mask in 0u64..1 << free.len() {
                        let drop: Vec<usize> = (0..free.len())
                            .filter(|&b| mask >> b & 1 == 1)
                            .map(|b| free[b])
                            .collect();
                        out.push(corec_inverse(c, i, &drop));
                    }
                }
            }
        }
    }
    out
}

/// Ordered pairs of nonempty sets whose union is `g`.
pub(crate) fn covers(g: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let k = g.len();
    let mut out = Vec::new();
    // each member goes left only, right only, or both
    let total = 3usize.pow(k as u32);
    for code in 0..total {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        let mut x = code;
        for &j in g {
            match x % 3 {
                0 => a.push(j),
                1 => b.push(j),
                _ => {
                    a.push(j);
                    b.push(j);
                }
            }
            x /= 3;
        }
        if !a.is_empty() && !b.is_empty() {
            out.push((a, b));
        }
    }
    out
}

pub(crate) fn weaken_inverse(c: &Cirquent15, u: usize, j: usize) -> (Cirquent15, Cl15Rule) {
    let mut p = c.clone();
    p.undergroups[u].retain(|&x| x != j);
    if c.undergroups
        .iter()
        .enumerate()
        .any(|(v, g)| v != u && g.contains(&j))
    {
        return (
            p,
            Cl15Rule::Weaken {
                under: u,
                oformula: j,
                new: None,
            },
        );
    }
    // `j` goes with its arc, and so do overgroups left empty
    let mut new_overgroups = Vec::new();
    let mut kept = Vec::new();
    let mut overgroups = Vec::new();
    for (o, g) in c.overgroups.iter().enumerate() {
        if g == &[j] {
            new_overgroups.push(o);
            continue;
        }
        if g.contains(&j) {
            kept.push(overgroups.len());
        }
        overgroups.push(drop_position(g, j));
    }
    p.oformulas.remove(j);
    p.undergroups = p.undergroups.iter().map(|g| drop_position(g, j)).collect();
    p.overgroups = overgroups;
    let new = NewOformula {
        formula: c.oformulas[j].clone(),
        overgroups: kept,
        new_overgroups,
    };
    (
        p,
        Cl15Rule::Weaken {
            under: u,
            oformula: j,
            new: Some(new),
        },
    )
}

pub(crate) fn or_inverse(c: &Cirquent15, i: usize, parts: &[Formula]) -> (Cirquent15, Cl15Rule) {
    (
        c.split_oformula(i, parts.to_vec()),
        Cl15Rule::OrIntro {
            i,
            arity: parts.len(),
        },
    )
}

pub(crate) fn and_inverse(c: &Cirquent15, i: usize, parts: &[Formula]) -> (Cirquent15, Cl15Rule) {
    let k = parts.len();
    let mut p = c.split_oformula(i, parts.to_vec());
    let mut undergroups = Vec::new();
    for g in &p.undergroups {
        if !g.contains(&i) {
            undergroups.push(g.clone());
            continue;
        }
        for m in 0..k {
            undergroups.push(
                g.iter()
                    .copied()
                    .filter(|&j| j < i || j >= i + k || j == i + m)
                    .collect(),
            );
        }
    }
    p.undergroups = undergroups;
    (p, Cl15Rule::AndIntro { i, arity: k })
}

pub(crate) fn rec_inverse(c: &Cirquent15, i: usize, k: usize) -> (Cirquent15, Cl15Rule) {
    let Formula::Brec(body) = &c.oformulas[i] else {
        unreachable!("○-rooted")
    };
    let mut p = c.clone();
    p.oformulas[i] = (**body).clone();
    p.overgroups.insert(k, vec![i]);
    (
        p,
        Cl15Rule::RecIntro {
            oformula: i,
            overgroup: k,
        },
    )
}

pub(crate) fn corec_inverse(c: &Cirquent15, i: usize, drop: &[usize]) -> (Cirquent15, Cl15Rule) {
    let Formula::Cobrec(body) = &c.oformulas[i] else {
        unreachable!("⫰-rooted")
    };
    let mut p = c.clone();
    p.oformulas[i] = (**body).clone();
    for &o in drop {
        p.overgroups[o].push(i);
        p.overgroups[o].sort();
    }
    (
        p,
        Cl15Rule::CorecIntro {
            oformula: i,
            drop: drop.to_vec(),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cl15::apply_forward;
    use crate::formula::parse;

    #[test]
    fn merge_splits_are_ordered_covers() {
        let mut got: Vec<(Vec<usize>, Vec<usize>)> = covers(&[0, 1]);
        got.sort();
        let mut want = vec![
            (vec![0], vec![1]),
            (vec![1], vec![0]),
            (vec![0], vec![0, 1]),
            (vec![0, 1], vec![0]),
            (vec![1], vec![0, 1]),
            (vec![0, 1], vec![1]),
            (vec![0, 1], vec![0, 1]),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn or_inverse_of_target_is_axiom() {
        let t = Cirquent15::target(&parse("~F | F").unwrap()).unwrap();
        let ps = enumerate_premises(&t, RuleTag::OrI);
        assert_eq!(ps.len(), 1);
        assert!(crate::cl15::axiom_match(&ps[0].0));
    }

    #[test]
    fn round_trips() {
        let c = Cirquent15::new(
            vec![
                parse("?~F").unwrap().normalize(),
                parse("!F & G").unwrap(),
                parse("?F").unwrap(),
                parse("F | G").unwrap(),
            ],
            vec![vec![0, 1], vec![1, 2, 3], vec![3]],
            vec![vec![0, 1, 2], vec![2, 3], vec![3]],
        )
        .unwrap();
        for tag in RuleTag::ALL {
            for (p, inst) in enumerate_premises(&c, tag) {
                p.validate()
                    .unwrap_or_else(|e| panic!("{tag:?} {inst:?}: {e}"));
                assert_eq!(apply_forward(&p, &inst).unwrap(), c, "{tag:?} {inst:?}");
            }
        }
    }
}
