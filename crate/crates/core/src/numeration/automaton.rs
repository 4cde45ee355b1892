use std::fmt;

use super::expansion::BetaExpansionSpec;
use crate::word::{Digit, Word};

/// The DFA whose path labels from `a_0` are the words of `0* L_{U_β}`.
///
/// States are `a_0 … a_{S-1}` with `S = m` for a finite expansion and
/// `S = m + k` otherwise; all states are final. From `a_{i-1}` the digits
/// `0 … t_i - 1` return to `a_0` and `t_i` advances to `a_i`. In the
/// eventually periodic case the last state sends `t_{m+k}` back to `a_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParryAutomaton {
    /// `transitions[state][digit]`
    transitions: Vec<Vec<Option<usize>>>,
    max_digit: Digit,
}

impl ParryAutomaton {
    pub fn build(spec: &BetaExpansionSpec) -> Self {
        let chain = spec.chain_digits();
        let states = chain.len();
        let max_digit = spec.t1();
        let loop_target = (!spec.is_finite()).then_some(spec.preperiod().len());
        let transitions = chain
            .iter()
            .enumerate()
            .map(|(i, &t)| {
                (0..=max_digit)
                    .map(|d| match d.cmp(&t) {
                        std::cmp::Ordering::Less => Some(0),
                        std::cmp::Ordering::Equal if i + 1 < states => Some(i + 1),
                        std::cmp::Ordering::Equal => loop_target,
                        std::cmp::Ordering::Greater => None,
                    })
                    .collect()
            })
            .collect();
        ParryAutomaton { transitions, max_digit }
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn max_digit(&self) -> Digit {
        self.max_digit
    }

    pub fn step(&self, state: usize, digit: Digit) -> Option<usize> {
        self.transitions.get(state)?.get(digit as usize).copied().flatten()
    }

    pub fn run_from(&self, state: usize, digits: &[Digit]) -> Option<usize> {
        digits.iter().try_fold(state, |q, &d| self.step(q, d))
    }

    /// State reached from `a_0` on `word`, if `word` labels a path.
    pub fn run(&self, word: &Word) -> Option<usize> {
        self.run_from(self.initial(), word.digits())
    }

    /// Every state is final, so acceptance is the existence of the path.
    pub fn accepts(&self, word: &Word) -> bool {
        self.run(word).is_some()
    }

    /// `(from, digit, to)` for every defined transition, ordered by state then digit.
    pub fn edges(&self) -> impl Iterator<Item = (usize, Digit, usize)> + '_ {
        self.transitions.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .enumerate()
                .filter_map(move |(d, t)| t.map(|to| (q, d as Digit, to)))
        })
    }
}

impl fmt::Display for ParryAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "state")?;
        for d in 0..=self.max_digit {
            write!(f, "\t{d}")?;
        }
        writeln!(f)?;
        for (q, row) in self.transitions.iter().enumerate() {
            write!(f, "a{q}")?;
            for t in row {
                match t {
                    Some(to) => write!(f, "\ta{to}")?,
                    None => write!(f, "\t-")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
