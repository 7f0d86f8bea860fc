//! Formula syntax: atoms, the AST, parsing, rendering and the purely
//! syntactic transformations every prover in this crate relies on.

mod ops;
mod parse;
mod render;
mod truth;

pub use ops::{elementarise, is_stable, surface_sites, ElementariseError, Site, SiteFilter};
pub use parse::{parse, ParseError};
pub use render::Style;
pub(crate) use truth::var_words;
pub use truth::{eval_elementary, is_tautology, truth_table, EvalError, TruthTable};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomKind {
    Elementary,
    General,
}

/// A propositional atom. Lowercase names are elementary, uppercase general.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    name: String,
}

impl Atom {
    /// Panics on a name outside the atom grammar; use [`Atom::try_new`] for
    /// untrusted input.
    pub fn new(name: &str) -> Atom {
        Atom::try_new(name).unwrap_or_else(|| panic!("invalid atom name {name:?}"))
    }

    pub fn try_new(name: &str) -> Option<Atom> {
        let mut chars = name.chars();
        let first = chars.next()?;
        if !first.is_ascii_alphabetic() {
            return None;
        }
        if !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return None;
        }
        if first.is_ascii_lowercase() && name.chars().any(|c| c.is_ascii_uppercase()) {
            return None;
        }
        Some(Atom {
            name: name.to_string(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> AtomKind {
        if self.name.as_bytes()[0].is_ascii_uppercase() {
            AtomKind::General
        } else {
            AtomKind::Elementary
        }
    }

    pub fn is_elementary(&self) -> bool {
        self.kind() == AtomKind::Elementary
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Lit {
        atom: Atom,
        negated: bool,
    },
    /// Negation of a non-atomic formula; removed by [`Formula::normalize`].
    Not(Box<Formula>),
    Pand(Vec<Formula>),
    Por(Vec<Formula>),
    Chand(Vec<Formula>),
    Chor(Vec<Formula>),
    Brec(Box<Formula>),
    Cobrec(Box<Formula>),
    Impl(Box<Formula>, Box<Formula>),
    Brimpl(Box<Formula>, Box<Formula>),
}

/// Node kinds, used for site filters and language checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Conn {
    True,
    False,
    Lit,
    Not,
    Pand,
    Por,
    Chand,
    Chor,
    Brec,
    Cobrec,
    Impl,
    Brimpl,
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Lit {
            atom: Atom::new(name),
            negated: false,
        }
    }

    pub fn neg_atom(name: &str) -> Formula {
        Formula::Lit {
            atom: Atom::new(name),
            negated: true,
        }
    }

    pub fn lit(atom: Atom, negated: bool) -> Formula {
        Formula::Lit { atom, negated }
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn pand(args: Vec<Formula>) -> Formula {
        assert!(args.len() >= 2, "conjunction needs at least two arguments");
        Formula::Pand(args)
    }

    pub fn por(args: Vec<Formula>) -> Formula {
        assert!(args.len() >= 2, "disjunction needs at least two arguments");
        Formula::Por(args)
    }

    pub fn chand(args: Vec<Formula>) -> Formula {
        assert!(
            args.len() >= 2,
            "choice conjunction needs at least two arguments"
        );
        Formula::Chand(args)
    }

    pub fn chor(args: Vec<Formula>) -> Formula {
        assert!(
            args.len() >= 2,
            "choice disjunction needs at least two arguments"
        );
        Formula::Chor(args)
    }

    pub fn brec(f: Formula) -> Formula {
        Formula::Brec(Box::new(f))
    }

    pub fn cobrec(f: Formula) -> Formula {
        Formula::Cobrec(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Impl(Box::new(a), Box::new(b))
    }

    pub fn brimpl(a: Formula, b: Formula) -> Formula {
        Formula::Brimpl(Box::new(a), Box::new(b))
    }

    pub fn conn(&self) -> Conn {
        match self {
            Formula::True => Conn::True,
            Formula::False => Conn::False,
            Formula::Lit { .. } => Conn::Lit,
            Formula::Not(_) => Conn::Not,
            Formula::Pand(_) => Conn::Pand,
            Formula::Por(_) => Conn::Por,
            Formula::Chand(_) => Conn::Chand,
            Formula::Chor(_) => Conn::Chor,
            Formula::Brec(_) => Conn::Brec,
            Formula::Cobrec(_) => Conn::Cobrec,
            Formula::Impl(..) => Conn::Impl,
            Formula::Brimpl(..) => Conn::Brimpl,
        }
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::True | Formula::False | Formula::Lit { .. } => vec![],
            Formula::Not(a) | Formula::Brec(a) | Formula::Cobrec(a) => vec![a],
            Formula::Pand(v) | Formula::Por(v) | Formula::Chand(v) | Formula::Chor(v) => {
                v.iter().collect()
            }
            Formula::Impl(a, b) | Formula::Brimpl(a, b) => vec![a, b],
        }
    }

    fn children_mut(&mut self) -> Vec<&mut Formula> {
        match self {
            Formula::True | Formula::False | Formula::Lit { .. } => vec![],
            Formula::Not(a) | Formula::Brec(a) | Formula::Cobrec(a) => vec![a],
            Formula::Pand(v) | Formula::Por(v) | Formula::Chand(v) | Formula::Chor(v) => {
                v.iter_mut().collect()
            }
            Formula::Impl(a, b) | Formula::Brimpl(a, b) => vec![a, b],
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Formula::Lit { .. })
    }

    pub fn is_normal(&self) -> bool {
        match self {
            Formula::Not(_) | Formula::Impl(..) | Formula::Brimpl(..) => false,
            _ => self.children().into_iter().all(Formula::is_normal),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Formula::size)
            .sum::<usize>()
    }

    pub fn subformula(&self, path: &[usize]) -> Option<&Formula> {
        let mut cur = self;
        for &i in path {
            cur = *cur.children().get(i)?;
        }
        Some(cur)
    }

    /// Copy of `self` with the node at `path` replaced.
    pub fn replace_at(&self, path: &[usize], new: Formula) -> Formula {
        let mut out = self.clone();
        *out.subformula_mut(path).expect("path out of range") = new;
        out
    }

    pub fn subformula_mut(&mut self, path: &[usize]) -> Option<&mut Formula> {
        let mut cur = self;
        for &i in path {
            cur = cur.children_mut().into_iter().nth(i)?;
        }
        Some(cur)
    }

    pub fn count(&self, pred: &dyn Fn(&Formula) -> bool) -> usize {
        let here = usize::from(pred(self));
        here + self
            .children()
            .into_iter()
            .map(|c| c.count(pred))
            .sum::<usize>()
    }

    /// Number of ○ and ⫰ nodes.
    pub fn recurrence_complexity(&self) -> usize {
        self.count(&|f| matches!(f, Formula::Brec(_) | Formula::Cobrec(_)))
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        if let Formula::Lit { atom, .. } = self {
            out.insert(atom.clone());
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    /// Renames atoms by `map`; atoms absent from the map are kept.
    pub fn rename_atoms(&self, map: &BTreeMap<Atom, Atom>) -> Formula {
        match self {
            Formula::Lit { atom, negated } => Formula::Lit {
                atom: map.get(atom).cloned().unwrap_or_else(|| atom.clone()),
                negated: *negated,
            },
            _ => {
                let mut out = self.clone();
                for c in out.children_mut() {
                    *c = c.rename_atoms(map);
                }
                out
            }
        }
    }

    /// Negation normal form with `→` and `◦–` expanded.
    pub fn normalize(&self) -> Formula {
        nnf(self, false)
    }

    /// Classical-style negation of a formula, pushed to the atoms.
    pub fn negate(&self) -> Formula {
        nnf(self, true)
    }

    /// Merges directly nested nodes of the same n-ary connective.
    pub fn flatten(&self) -> Formula {
        fn collect(conn: Conn, f: Formula, out: &mut Vec<Formula>) {
            if f.conn() == conn {
                match f {
                    Formula::Pand(v) | Formula::Por(v) | Formula::Chand(v) | Formula::Chor(v) => {
                        for g in v {
                            collect(conn, g, out);
                        }
                    }
                    _ => unreachable!(),
                }
            } else {
                out.push(f);
            }
        }
        let conn = self.conn();
        match self {
            Formula::Pand(v) | Formula::Por(v) | Formula::Chand(v) | Formula::Chor(v) => {
                let mut out = Vec::new();
                for g in v {
                    collect(conn, g.flatten(), &mut out);
                }
                match conn {
                    Conn::Pand => Formula::Pand(out),
                    Conn::Por => Formula::Por(out),
                    Conn::Chand => Formula::Chand(out),
                    _ => Formula::Chor(out),
                }
            }
            _ => {
                let mut out = self.clone();
                for c in out.children_mut() {
                    *c = c.flatten();
                }
                out
            }
        }
    }

    pub fn render(&self, style: Style) -> String {
        render::render(self, style)
    }

    pub fn ascii(&self) -> String {
        self.render(Style::Ascii)
    }

    pub fn unicode(&self) -> String {
        self.render(Style::Unicode)
    }
}

fn nnf(f: &Formula, neg: bool) -> Formula {
    let map = |v: &[Formula], neg: bool| v.iter().map(|g| nnf(g, neg)).collect::<Vec<_>>();
    match (f, neg) {
        (Formula::True, false) | (Formula::False, true) => Formula::True,
        (Formula::True, true) | (Formula::False, false) => Formula::False,
        (Formula::Lit { atom, negated }, _) => Formula::Lit {
            atom: atom.clone(),
            negated: *negated != neg,
        },
        (Formula::Not(a), _) => nnf(a, !neg),
        (Formula::Pand(v), false) | (Formula::Por(v), true) => Formula::Pand(map(v, neg)),
        (Formula::Por(v), false) | (Formula::Pand(v), true) => Formula::Por(map(v, neg)),
        (Formula::Chand(v), false) | (Formula::Chor(v), true) => Formula::Chand(map(v, neg)),
        (Formula::Chor(v), false) | (Formula::Chand(v), true) => Formula::Chor(map(v, neg)),
        (Formula::Brec(a), false) | (Formula::Cobrec(a), true) => Formula::brec(nnf(a, neg)),
        (Formula::Cobrec(a), false) | (Formula::Brec(a), true) => Formula::cobrec(nnf(a, neg)),
        (Formula::Impl(a, b), false) => Formula::Por(vec![nnf(a, true), nnf(b, false)]),
        (Formula::Impl(a, b), true) => Formula::Pand(vec![nnf(a, false), nnf(b, true)]),
        (Formula::Brimpl(a, b), false) => {
            Formula::Por(vec![Formula::cobrec(nnf(a, true)), nnf(b, false)])
        }
        (Formula::Brimpl(a, b), true) => {
            Formula::Pand(vec![Formula::brec(nnf(a, false)), nnf(b, true)])
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ascii())
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Formula, ParseError> {
        parse(s)
    }
}

impl serde::Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.ascii())
    }
}

impl<'de> serde::Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Formula, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

impl serde::Serialize for Atom {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name)
    }
}

impl<'de> serde::Deserialize<'de> for Atom {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Atom, D::Error> {
        let s = String::deserialize(d)?;
        Atom::try_new(&s).ok_or_else(|| serde::de::Error::custom(format!("invalid atom {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        let f = parse("~(p & q)").unwrap().normalize();
        assert_eq!(f, parse("~p | ~q").unwrap());
        let f = parse("~!P").unwrap().normalize();
        assert_eq!(f, parse("?~P").unwrap());
        let f = parse("P o-> Q").unwrap().normalize();
        assert_eq!(f, parse("?~P | Q").unwrap());
        let f = parse("~~p").unwrap().normalize();
        assert_eq!(f, Formula::atom("p"));
    }

    #[test]
    fn flatten_merges_same_connective() {
        let f = parse("(p & q) & r").unwrap();
        assert_eq!(f.flatten(), parse("p & q & r").unwrap());
        assert_ne!(f, parse("p & q & r").unwrap());
    }

    #[test]
    fn recurrence_complexity_counts() {
        assert_eq!(parse("!?P | !P").unwrap().recurrence_complexity(), 3);
    }

    #[test]
    fn atom_kinds() {
        assert_eq!(Atom::new("p1").kind(), AtomKind::Elementary);
        assert_eq!(Atom::new("Foo").kind(), AtomKind::General);
        assert!(Atom::try_new("1p").is_none());
    }
}
