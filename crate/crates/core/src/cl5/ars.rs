use super::{Cl5Error, ShallowCirquent};
use crate::formula::{var_words, Atom, Formula};

pub const DEFAULT_MAX_PORTS: usize = 16;

/// A literal occurrence in the pool.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Port {
    pub oformula: usize,
    pub path: Vec<usize>,
    pub atom: Atom,
    pub negated: bool,
}

pub fn ports(c: &ShallowCirquent) -> Vec<Port> {
    fn go(f: &Formula, oformula: usize, path: &mut Vec<usize>, out: &mut Vec<Port>) {
        if let Formula::Lit { atom, negated } = f {
            out.push(Port {
                oformula,
                path: path.clone(),
                atom: atom.clone(),
                negated: *negated,
            });
        }
        for (i, c) in f.children().into_iter().enumerate() {
            path.push(i);
            go(c, oformula, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    for (i, f) in c.pool.iter().enumerate() {
        go(f, i, &mut Vec::new(), &mut out);
    }
    out
}

/// Postfix program for one oformula: operands are port numbers.
#[derive(Clone, Copy)]
enum Op {
    Port(usize),
    And(usize),
    Or(usize),
}

fn compile(f: &Formula, next: &mut usize, out: &mut Vec<Op>) {
    match f {
        Formula::Lit { .. } => {
            out.push(Op::Port(*next));
            *next += 1;
        }
        Formula::Pand(v) | Formula::Por(v) => {
            for g in v {
                compile(g, next, out);
            }
            out.push(if matches!(f, Formula::Pand(_)) {
                Op::And(v.len())
            } else {
                Op::Or(v.len())
            });
        }
        _ => unreachable!("validated cirquent"),
    }
}

struct Evaluator {
    programs: Vec<Vec<Op>>,
    groups: Vec<Vec<usize>>,
}

impl Evaluator {
    /// Whether every ogroup is true under every row of the port tables.
    fn all_true(&self, port_tables: &[Vec<u64>], words: usize, rows: usize) -> bool {
        let mut values: Vec<Vec<u64>> = Vec::with_capacity(self.programs.len());
        let mut stack: Vec<Vec<u64>> = Vec::new();
        for prog in &self.programs {
            for op in prog {
                match *op {
                    Op::Port(p) => stack.push(port_tables[p].clone()),
                    Op::And(k) | Op::Or(k) => {
                        let args = stack.split_off(stack.len() - k);
                        let mut acc = args[0].clone();
                        let and = matches!(op, Op::And(_));
                        for a in &args[1..] {
                            for (x, y) in acc.iter_mut().zip(a) {
                                if and {
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
            values.push(stack.pop().expect("one value"));
        }
        let mask_last = if rows % 64 == 0 {
            u64::MAX
        } else {
            (1u64 << (rows % 64)) - 1
        };
        self.groups.iter().all(|g| {
            (0..words).all(|w| {
                let mut acc = 0u64;
                for &i in g {
                    acc |= values[i][w];
                }
                let want = if w == words - 1 { mask_last } else { u64::MAX };
                acc & want == want
            })
        })
    }
}

/// Validity under the resource semantics: some arrangement (a set of
/// disjoint pairs of opposite literal occurrences of one atom) makes every
/// ogroup true under every assignment of values to the occurrences that
/// gives the two members of each pair opposite values.
pub fn ars_valid(c: &ShallowCirquent, max_ports: usize) -> Result<bool, Cl5Error> {
    Ok(ars_witness(c, max_ports)?.is_some())
}

/// A validating arrangement, as pairs of ports, if there is one.
pub fn ars_witness(
    c: &ShallowCirquent,
    max_ports: usize,
) -> Result<Option<Vec<(Port, Port)>>, Cl5Error> {
    c.validate()?;
    let ps = ports(c);
    if ps.len() > max_ports {
        return Err(Cl5Error::TooManyPorts(ps.len(), max_ports));
    }
    let mut next = 0;
    let programs = c
        .pool
        .iter()
        .map(|f| {
            let mut prog = Vec::new();
            compile(f, &mut next, &mut prog);
            prog
        })
        .collect();
    let ev = Evaluator {
        programs,
        groups: c.groups.clone(),
    };
    let mut partner: Vec<Option<usize>> = vec![None; ps.len()];
    if !arrangements(&ps, 0, &mut partner, &ev) {
        return Ok(None);
    }
    let pairs = (0..ps.len())
        .filter_map(|i| {
            partner[i]
                .filter(|&j| j > i)
                .map(|j| (ps[i].clone(), ps[j].clone()))
        })
        .collect();
    Ok(Some(pairs))
}

/// Leaves `partner` at the first validating arrangement found.
fn arrangements(ps: &[Port], i: usize, partner: &mut Vec<Option<usize>>, ev: &Evaluator) -> bool {
    if i == ps.len() {
        return valid_under(partner, ev);
    }
    if partner[i].is_some() {
        return arrangements(ps, i + 1, partner, ev);
    }
    if arrangements(ps, i + 1, partner, ev) {
        return true;
    }
    for j in i + 1..ps.len() {
        if partner[j].is_none() && ps[j].atom == ps[i].atom && ps[j].negated != ps[i].negated {
            partner[i] = Some(j);
            partner[j] = Some(i);
            if arrangements(ps, i + 1, partner, ev) {
                return true;
            }
            partner[i] = None;
            partner[j] = None;
        }
    }
    false
}

fn valid_under(partner: &[Option<usize>], ev: &Evaluator) -> bool {
    // one free value per unpaired port and per pair
    let mut var_of = vec![0usize; partner.len()];
    let mut vars = 0;
    for i in 0..partner.len() {
        match partner[i] {
            Some(j) if j < i => var_of[i] = var_of[j],
            _ => {
                var_of[i] = vars;
                vars += 1;
            }
        }
    }
    let rows = 1usize << vars;
    let words = rows.div_ceil(64);
    let tables: Vec<Vec<u64>> = (0..partner.len())
        .map(|i| {
            let base = var_words(var_of[i], vars);
            match partner[i] {
                Some(j) if j < i => base.into_iter().map(|w| !w).collect(),
                _ => base,
            }
        })
        .collect();
    ev.all_true(&tables, words, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn single(s: &str) -> ShallowCirquent {
        ShallowCirquent::singleton(parse(s).unwrap().normalize())
    }

    #[test]
    fn resource_validity() {
        assert!(ars_valid(&single("~P | P"), 16).unwrap());
        assert!(!ars_valid(&single("~P | (P & P)"), 16).unwrap());
        assert!(ars_valid(&single("(~P | ~P) | P"), 16).unwrap());
        assert!(ars_valid(&single("((~P | ~Q) & (~R | ~S)) | ((P | R) & (Q | S))"), 16).unwrap());
        assert!(!ars_valid(&single("P | Q"), 16).unwrap());
        assert!(ars_valid(&ShallowCirquent::empty(), 16).unwrap());
        let two = ShallowCirquent::new(
            vec![parse("~P").unwrap(), parse("P").unwrap()],
            vec![vec![0, 1], vec![0, 1]],
        )
        .unwrap();
        assert!(ars_valid(&two, 16).unwrap());
        assert!(ars_valid(&single("~P | P | ~P | P | ~P | P | ~P | P | ~P"), 8).is_err());
        let w = ars_witness(&single("~P | P"), 16).unwrap().unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(
            (w[0].0.path.clone(), w[0].1.path.clone()),
            (vec![0], vec![1])
        );
    }
}
