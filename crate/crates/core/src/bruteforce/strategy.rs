use super::{BfProof, BfRule};
use crate::formula::{surface_sites, Formula};
use crate::games::{copycat_obligation, LabMove, Player, Strategy};
use std::collections::VecDeque;

/// The machine strategy described by a proof. The proof is walked from its
/// last step: R2 steps become choice moves, R3 steps copycat pairs, and
/// environment choices at an R1 step select the matching premise.
pub struct ProofStrategy {
    proof: BfProof,
}

/// Move prefix addressing the surface node at `path`.
fn prefix(path: &[usize]) -> String {
    path.iter().map(|i| format!("{i}.")).collect()
}

struct State {
    step: usize,
    pending: VecDeque<String>,
    pairs: Vec<(String, String)>,
}

impl ProofStrategy {
    pub fn new(proof: BfProof) -> ProofStrategy {
        ProofStrategy { proof }
    }

    fn advance(&self, st: &mut State) {
        loop {
            let step = &self.proof.steps[st.step];
            match step.rule {
                BfRule::R1 => return,
                BfRule::R2 => {
                    let path = step.detail.path.as_deref().unwrap_or(&[]);
                    st.pending.push_back(format!(
                        "{}{}",
                        prefix(path),
                        step.detail.component.unwrap_or(0)
                    ));
                }
                BfRule::R3 => {
                    let pos = step.detail.positive.as_deref().unwrap_or(&[]);
                    let neg = step.detail.negative.as_deref().unwrap_or(&[]);
                    st.pairs.push((prefix(pos), prefix(neg)));
                }
            }
            st.step = step.premises[0];
        }
    }

    /// The R1 premise selected by an environment choice move, if any.
    fn env_choice(&self, step: usize, mv: &str) -> Option<usize> {
        let s = &self.proof.steps[step];
        for site in surface_sites(&s.formula, &|g| matches!(g, Formula::Chand(_))) {
            if !site.surface {
                continue;
            }
            let Some(rest) = mv.strip_prefix(&prefix(&site.path)) else {
                continue;
            };
            let Ok(i) = rest.parse::<usize>() else {
                continue;
            };
            let Formula::Chand(args) = &site.subformula else {
                unreachable!()
            };
            let Some(arg) = args.get(i) else { continue };
            let g = s.formula.replace_at(&site.path, arg.clone());
            return s
                .premises
                .iter()
                .copied()
                .find(|&p| self.proof.steps[p].formula == g);
        }
        None
    }
}

impl Strategy for ProofStrategy {
    fn respond(&self, position: &[LabMove]) -> Option<String> {
        let mut st = State {
            step: self.proof.steps.len() - 1,
            pending: VecDeque::new(),
            pairs: Vec::new(),
        };
        self.advance(&mut st);
        // indices of the choice moves; the rest may be copycat moves, some
        // made before their pair was reached
        let mut choices = Vec::new();
        for (k, m) in position.iter().enumerate() {
            if m.by == Player::Machine {
                if let Some(i) = st.pending.iter().position(|p| p == &m.mv) {
                    st.pending.remove(i);
                    choices.push(k);
                    continue;
                }
            }
            if st
                .pairs
                .iter()
                .any(|(a, b)| m.mv.starts_with(a.as_str()) || m.mv.starts_with(b.as_str()))
            {
                continue;
            }
            if m.by == Player::Env && self.proof.steps[st.step].rule == BfRule::R1 {
                if let Some(next) = self.env_choice(st.step, &m.mv) {
                    choices.push(k);
                    st.step = next;
                    self.advance(&mut st);
                }
            }
        }
        let copied: Vec<LabMove> = position
            .iter()
            .enumerate()
            .filter(|(k, _)| !choices.contains(k))
            .map(|(_, m)| m.clone())
            .collect();
        if let Some(mv) = st.pending.front() {
            return Some(mv.clone());
        }
        st.pairs
            .iter()
            .find_map(|(a, b)| copycat_obligation(&copied, a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{decide, Outcome, DEFAULT_BUDGET};
    use super::*;
    use crate::formula::parse;
    use crate::games::{catalogue, interpret, verify_strategy, Interpretation};
    use crate::system::SystemId;

    fn strategy(src: &str, system: SystemId) -> ProofStrategy {
        match decide(&parse(src).unwrap(), system, DEFAULT_BUDGET).unwrap() {
            Outcome::Provable(p) => ProofStrategy::new(p),
            _ => panic!("{src} unprovable"),
        }
    }

    #[test]
    fn cl1_strategy_wins_every_interpretation() {
        let src = "((p -> q) * (p -> r)) -> (p -> (q * r))";
        let s = strategy(src, SystemId::Cl1);
        for row in 0..8u32 {
            let itp = Interpretation::new()
                .with_value("p", row & 1 == 1)
                .with_value("q", row & 2 == 2)
                .with_value("r", row & 4 == 4);
            let g = interpret(&parse(src).unwrap(), &itp).unwrap();
            assert!(verify_strategy(&g, &s).is_ok());
        }
    }

    #[test]
    fn choice_then_copycat_at_the_same_site() {
        let src = "P * p -> p + P";
        let s = strategy(src, SystemId::Cl2);
        // race is not static, and no strategy need win it
        for (name, game) in catalogue::named().into_iter().filter(|(n, _)| n != "race") {
            for value in [false, true] {
                let itp = Interpretation::new()
                    .with_game("P", game.clone())
                    .with_value("p", value);
                let g = interpret(&parse(src).unwrap(), &itp).unwrap();
                assert!(verify_strategy(&g, &s).is_ok(), "{name} {value}");
            }
        }
    }

    #[test]
    fn cl2_copycat_strategy() {
        let src = "P & P -> P";
        let s = strategy(src, SystemId::Cl2);
        for (name, game) in catalogue::named() {
            let g = interpret(
                &parse(src).unwrap(),
                &Interpretation::new().with_game("P", game),
            )
            .unwrap();
            assert!(verify_strategy(&g, &s).is_ok(), "{name}");
        }
    }
}
