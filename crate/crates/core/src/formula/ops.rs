use super::{truth, Formula};
use thiserror::Error;

/// One node occurrence inside a formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Site {
    pub path: Vec<usize>,
    pub subformula: Formula,
    /// No choice or recurrence operator above it.
    pub surface: bool,
    /// No choice operator above it.
    pub semisurface: bool,
}

pub type SiteFilter<'a> = &'a dyn Fn(&Formula) -> bool;

/// All node occurrences accepted by `filter`, in preorder (which is
/// lexicographic path order).
pub fn surface_sites(f: &Formula, filter: SiteFilter<'_>) -> Vec<Site> {
    fn go(
        f: &Formula,
        filter: SiteFilter<'_>,
        path: &mut Vec<usize>,
        surface: bool,
        semi: bool,
        out: &mut Vec<Site>,
    ) {
        if filter(f) {
            out.push(Site {
                path: path.clone(),
                subformula: f.clone(),
                surface,
                semisurface: semi,
            });
        }
        let (choice, rec) = match f {
            Formula::Chand(_) | Formula::Chor(_) => (true, false),
            Formula::Brec(_) | Formula::Cobrec(_) => (false, true),
            _ => (false, false),
        };
        for (i, c) in f.children().into_iter().enumerate() {
            path.push(i);
            go(
                c,
                filter,
                path,
                surface && !choice && !rec,
                semi && !choice,
                out,
            );
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(f, filter, &mut Vec::new(), true, true, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ElementariseError {
    #[error("elementarisation is undefined for recurrence operators")]
    Recurrence,
}

/// Replaces surface `⊓` by `⊤`, surface `⊔` by `⊥` and every general
/// literal by `⊥`. The input is normalized first.
pub fn elementarise(f: &Formula) -> Result<Formula, ElementariseError> {
    fn go(f: &Formula) -> Result<Formula, ElementariseError> {
        Ok(match f {
            Formula::True | Formula::False => f.clone(),
            Formula::Lit { atom, .. } => {
                if atom.is_elementary() {
                    f.clone()
                } else {
                    Formula::False
                }
            }
            Formula::Chand(_) => Formula::True,
            Formula::Chor(_) => Formula::False,
            Formula::Pand(v) => Formula::Pand(v.iter().map(go).collect::<Result<_, _>>()?),
            Formula::Por(v) => Formula::Por(v.iter().map(go).collect::<Result<_, _>>()?),
            Formula::Brec(_) | Formula::Cobrec(_) => return Err(ElementariseError::Recurrence),
            Formula::Not(_) | Formula::Impl(..) | Formula::Brimpl(..) => unreachable!("normalized"),
        })
    }
    if f.is_normal() {
        go(f)
    } else {
        go(&f.normalize())
    }
}

/// A formula is stable when its elementarisation is a classical tautology.
pub fn is_stable(f: &Formula) -> Result<bool, ElementariseError> {
    let e = elementarise(f)?;
    Ok(truth::is_tautology(&e).expect("elementarisations are elementary"))
}
