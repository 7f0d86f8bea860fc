use super::{Atom, Formula};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("connective {0} has no classical reading")]
    NotClassical(String),
    #[error("no truth value for atom {0}")]
    Unassigned(String),
    #[error("{0} atoms exceed the truth-table limit")]
    TooManyAtoms(usize),
}

pub const MAX_TABLE_ATOMS: usize = 24;

/// Truth table of a classical formula: bit `k` is the value under the
/// assignment giving `vars[i]` the `i`-th bit of `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    pub vars: Vec<Atom>,
    pub words: Vec<u64>,
}

impl TruthTable {
    fn rows(&self) -> usize {
        1 << self.vars.len()
    }

    pub fn get(&self, row: usize) -> bool {
        self.words[row / 64] >> (row % 64) & 1 == 1
    }

    pub fn all(&self) -> bool {
        let rows = self.rows();
        if rows < 64 {
            let mask = (1u64 << rows) - 1;
            return self.words[0] & mask == mask;
        }
        self.words.iter().all(|&w| w == u64::MAX)
    }
}

const LOW: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Table of variable `i` over `n` variables, as words.
pub(crate) fn var_words(i: usize, n: usize) -> Vec<u64> {
    let nwords = if n <= 6 { 1 } else { 1 << (n - 6) };
    (0..nwords)
        .map(|w| {
            if i < 6 {
                LOW[i]
            } else if (w >> (i - 6)) & 1 == 1 {
                u64::MAX
            } else {
                0
            }
        })
        .collect()
}

pub fn truth_table(f: &Formula, vars: &[Atom]) -> Result<TruthTable, EvalError> {
    let n = vars.len();
    if n > MAX_TABLE_ATOMS {
        return Err(EvalError::TooManyAtoms(n));
    }
    let index: BTreeMap<&Atom, usize> = vars.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let nwords = if n <= 6 { 1 } else { 1 << (n - 6) };
    let cache: Vec<Vec<u64>> = (0..n).map(|i| var_words(i, n)).collect();
    fn go(
        f: &Formula,
        index: &BTreeMap<&Atom, usize>,
        cache: &[Vec<u64>],
        nwords: usize,
    ) -> Result<Vec<u64>, EvalError> {
        let combine = |v: &[Formula], and: bool| -> Result<Vec<u64>, EvalError> {
            let mut acc = vec![if and { u64::MAX } else { 0 }; nwords];
            for g in v {
                let t = go(g, index, cache, nwords)?;
                for (a, b) in acc.iter_mut().zip(t) {
                    if and {
                        *a &= b
                    } else {
                        *a |= b
                    }
                }
            }
            Ok(acc)
        };
        Ok(match f {
            Formula::True => vec![u64::MAX; nwords],
            Formula::False => vec![0; nwords],
            Formula::Lit { atom, negated } => {
                let i = *index
                    .get(atom)
                    .ok_or_else(|| EvalError::Unassigned(atom.to_string()))?;
                if *negated {
                    cache[i].iter().map(|w| !w).collect()
                } else {
                    cache[i].clone()
                }
            }
            Formula::Not(a) => go(a, index, cache, nwords)?
                .into_iter()
                .map(|w| !w)
                .collect(),
            Formula::Pand(v) => combine(v, true)?,
            Formula::Por(v) => combine(v, false)?,
            Formula::Impl(a, b) => {
                let x = go(a, index, cache, nwords)?;
                let y = go(b, index, cache, nwords)?;
                x.into_iter().zip(y).map(|(x, y)| !x | y).collect()
            }
            other => return Err(EvalError::NotClassical(format!("{:?}", other.conn()))),
        })
    }
    let words = go(f, &index, &cache, nwords)?;
    Ok(TruthTable {
        vars: vars.to_vec(),
        words,
    })
}

/// Classical validity, treating every atom as a boolean variable.
pub fn is_tautology(f: &Formula) -> Result<bool, EvalError> {
    let vars: Vec<Atom> = f.atoms().into_iter().collect();
    Ok(truth_table(f, &vars)?.all())
}

/// Classical value of `f` under `assignment`.
pub fn eval_elementary(f: &Formula, assignment: &BTreeMap<Atom, bool>) -> Result<bool, EvalError> {
    let all = |v: &[Formula]| -> Result<Vec<bool>, EvalError> {
        v.iter().map(|g| eval_elementary(g, assignment)).collect()
    };
    Ok(match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Lit { atom, negated } => {
            let v = *assignment
                .get(atom)
                .ok_or_else(|| EvalError::Unassigned(atom.to_string()))?;
            v != *negated
        }
        Formula::Not(a) => !eval_elementary(a, assignment)?,
        Formula::Pand(v) => all(v)?.into_iter().all(|b| b),
        Formula::Por(v) => all(v)?.into_iter().any(|b| b),
        Formula::Impl(a, b) => !eval_elementary(a, assignment)? || eval_elementary(b, assignment)?,
        other => return Err(EvalError::NotClassical(format!("{:?}", other.conn()))),
    })
}
