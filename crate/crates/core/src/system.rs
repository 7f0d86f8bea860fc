use crate::formula::{AtomKind, Formula};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemId {
    Cl1,
    Cl2,
    Cl5,
    Ccc,
    Cl15,
}

impl SystemId {
    pub const ALL: [SystemId; 5] = [
        SystemId::Cl1,
        SystemId::Cl2,
        SystemId::Cl5,
        SystemId::Ccc,
        SystemId::Cl15,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SystemId::Cl1 => "cl1",
            SystemId::Cl2 => "cl2",
            SystemId::Cl5 => "cl5",
            SystemId::Ccc => "ccc",
            SystemId::Cl15 => "cl15",
        }
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SystemId {
    type Err = String;
    fn from_str(s: &str) -> Result<SystemId, String> {
        SystemId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown system `{s}` (expected cl1, cl2, cl5, ccc or cl15)"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{formula} is outside the language of {system}: {reason}")]
pub struct GateError {
    pub system: SystemId,
    pub formula: String,
    pub reason: String,
}

/// Normalizes `f` and checks it against the language of `system`.
pub fn gate(f: &Formula, system: SystemId) -> Result<Formula, GateError> {
    let g = f.normalize();
    let fail = |reason: &str| GateError {
        system,
        formula: f.ascii(),
        reason: reason.to_string(),
    };
    let mut problem: Option<&'static str> = None;
    check(&g, system, &mut problem);
    match problem {
        Some(reason) => Err(fail(reason)),
        None => Ok(g),
    }
}

fn check(f: &Formula, system: SystemId, problem: &mut Option<&'static str>) {
    if problem.is_some() {
        return;
    }
    let bad = match f {
        Formula::True | Formula::False => {
            matches!(system, SystemId::Cl5 | SystemId::Ccc | SystemId::Cl15)
                .then_some("constants are not allowed")
        }
        Formula::Lit { atom, .. } => match (system, atom.kind()) {
            (SystemId::Cl1, AtomKind::General) => Some("general atoms are not allowed"),
            (SystemId::Cl15, AtomKind::Elementary) => Some("elementary atoms are not allowed"),
            _ => None,
        },
        Formula::Chand(_) | Formula::Chor(_) => {
            matches!(system, SystemId::Cl5 | SystemId::Ccc | SystemId::Cl15)
                .then_some("choice connectives are not allowed")
        }
        Formula::Brec(_) | Formula::Cobrec(_) => {
            (system != SystemId::Cl15).then_some("recurrence operators are not allowed")
        }
        _ => None,
    };
    if bad.is_some() {
        *problem = bad;
        return;
    }
    for c in f.children() {
        check(c, system, problem);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn language_gates() {
        assert!(gate(&parse("p * q").unwrap(), SystemId::Cl1).is_ok());
        assert!(gate(&parse("P * q").unwrap(), SystemId::Cl1).is_err());
        assert!(gate(&parse("P * q").unwrap(), SystemId::Cl2).is_ok());
        assert!(gate(&parse("P * Q").unwrap(), SystemId::Cl5).is_err());
        assert!(gate(&parse("P -> P & P").unwrap(), SystemId::Ccc).is_ok());
        assert!(gate(&parse("!P o-> P").unwrap(), SystemId::Cl15).is_ok());
        assert!(gate(&parse("!p").unwrap(), SystemId::Cl15).is_err());
        assert!(gate(&parse("P o-> P").unwrap(), SystemId::Cl2).is_err());
        assert_eq!("CL15".parse::<SystemId>().unwrap(), SystemId::Cl15);
    }
}
