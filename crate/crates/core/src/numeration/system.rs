use std::sync::RwLock;

use super::automaton::ParryAutomaton;
use super::expansion::{
    beta_value, parse_beta_spec, quasi_greedy_expansion, validate_admissibility, BetaExpansionSpec, EventuallyPeriodic,
};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::word::{Digit, Word};

/// The Parry–Bertrand numeration system `U_β` attached to an admissible
/// expansion of 1, together with its automaton and a numeric β.
///
/// Values of `U_β` are exact `u64`s extended on demand behind a lock;
/// requesting a term past `u64::MAX` is an [`Error::Overflow`].
#[derive(Debug)]
pub struct NumerationSystem<T: Real> {
    spec: BetaExpansionSpec,
    automaton: ParryAutomaton,
    beta: T,
    tolerance: T,
    quasi_greedy: EventuallyPeriodic,
    c_beta: usize,
    u_values: RwLock<Vec<u64>>,
}

impl<T: Real> NumerationSystem<T> {
    pub fn new(spec: BetaExpansionSpec) -> Result<Self> {
        Self::with_tolerance(spec, T::default_tolerance())
    }

    pub fn with_tolerance(spec: BetaExpansionSpec, tolerance: T) -> Result<Self> {
        validate_admissibility(&spec)?;
        let automaton = ParryAutomaton::build(&spec);
        let beta = beta_value(&spec, tolerance)?;
        let quasi_greedy = quasi_greedy_expansion(&spec);
        let c_beta = max_zero_run(&quasi_greedy);
        let sys = NumerationSystem {
            spec,
            automaton,
            beta,
            tolerance,
            quasi_greedy,
            c_beta,
            u_values: RwLock::new(vec![1]),
        };
        Ok(sys)
    }

    /// Parses the digits of `d_β(1)` (`"1,1"`, `"2;1"`, …) and builds the system.
    pub fn from_text(text: &str) -> Result<Self> {
        Self::new(parse_beta_spec(text)?)
    }

    pub fn spec(&self) -> &BetaExpansionSpec {
        &self.spec
    }

    pub fn automaton(&self) -> &ParryAutomaton {
        &self.automaton
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn tolerance(&self) -> T {
        self.tolerance
    }

    /// `d*_β(1)`
    pub fn quasi_greedy(&self) -> &EventuallyPeriodic {
        &self.quasi_greedy
    }

    /// Largest digit of the alphabet `{0, …, t_1}`.
    pub fn max_digit(&self) -> Digit {
        self.spec.t1()
    }

    pub fn alphabet(&self) -> impl Iterator<Item = Digit> {
        0..=self.spec.t1()
    }

    /// Maximal number of consecutive zeros in `d*_β(1)`.
    pub fn c_beta(&self) -> usize {
        self.c_beta
    }

    /// Next term of `U_β`, or `None` on overflow.
    fn next_term(&self, values: &[u64]) -> Option<u64> {
        let i = values.len();
        let pre = self.spec.preperiod();
        let t = self.spec.chain_digits();
        let span = t.len();
        let at = |j: usize| values[i - j] as u128;
        let mut acc: u128 = 0;
        if i < span {
            // U(i) = t_1 U(i-1) + ... + t_i U(0) + 1
            for j in 1..=i {
                acc = acc.checked_add((t[j - 1] as u128).checked_mul(at(j))?)?;
            }
            acc = acc.checked_add(1)?;
        } else {
            for j in 1..=span {
                acc = acc.checked_add((t[j - 1] as u128).checked_mul(at(j))?)?;
            }
            if !self.spec.is_finite() {
                let k = self.spec.period().len();
                acc = acc.checked_add(at(k))?;
                for (j, &tj) in pre.iter().enumerate() {
                    acc = acc.checked_sub((tj as u128).checked_mul(at(k + j + 1))?)?;
                }
            }
        }
        u64::try_from(acc).ok()
    }

    /// Extends the cache until `pred(last)` holds or the length reaches `len`.
    fn extend_while(&self, len: usize, stop: impl Fn(u64) -> bool) {
        {
            let values = self.u_values.read().unwrap();
            if values.len() >= len || stop(*values.last().unwrap()) {
                return;
            }
        }
        let mut values = self.u_values.write().unwrap();
        while values.len() < len && !stop(*values.last().unwrap()) {
            match self.next_term(&values) {
                Some(v) => values.push(v),
                None => break,
            }
        }
    }

    /// `U_β(n)`
    pub fn u(&self, n: usize) -> Result<u64> {
        self.extend_while(n + 1, |_| false);
        self.u_values
            .read()
            .unwrap()
            .get(n)
            .copied()
            .ok_or_else(|| Error::Overflow(format!("U_β({n})")))
    }

    /// `U_β(0), …, U_β(n)`
    pub fn u_sequence(&self, n: usize) -> Result<Vec<u64>> {
        self.u(n)?;
        Ok(self.u_values.read().unwrap()[..=n].to_vec())
    }

    /// The greedy (normal) representation of `n`; `rep(0) = ε`.
    pub fn rep(&self, n: u64) -> Word {
        self.extend_while(usize::MAX, |last| last > n);
        let values = self.u_values.read().unwrap();
        let len = values.partition_point(|&u| u <= n);
        let mut rest = n;
        let digits = values[..len]
            .iter()
            .rev()
            .map(|&u| {
                let d = rest / u;
                rest %= u;
                d as Digit
            })
            .collect();
        Word::new(digits)
    }

    /// `Σ d_j U_β(j)` for any word over the alphabet, normal or not.
    pub fn val(&self, word: &Word) -> Result<u64> {
        let max = self.max_digit();
        let n = word.len();
        if n > 0 {
            self.u(n - 1)?;
        }
        let values = self.u_values.read().unwrap();
        word.digits().iter().rev().enumerate().try_fold(0u64, |acc, (j, &d)| {
            if d > max {
                return Err(Error::OutsideAlphabet {
                    digit: d as u64,
                    max: max as u64,
                });
            }
            (d as u64)
                .checked_mul(values[j])
                .and_then(|x| acc.checked_add(x))
                .ok_or_else(|| Error::Overflow(format!("val({word})")))
        })
    }

    /// Membership in `L_{U_β}` (flag off) or `0* L_{U_β}` (flag on).
    pub fn is_in_language(&self, word: &Word, allow_leading_zeros: bool) -> bool {
        if !allow_leading_zeros && word.digits().first() == Some(&0) {
            return false;
        }
        self.automaton.accepts(word)
    }

    /// The first `count` words of the language in genealogical order,
    /// generated by walking the automaton length by length.
    pub fn enumerate_language(&self, count: usize) -> Vec<Word> {
        let mut out = Vec::with_capacity(count);
        if count == 0 {
            return out;
        }
        out.push(Word::empty());
        let mut len = 1;
        while out.len() < count {
            let before = out.len();
            let mut prefix = Vec::with_capacity(len);
            self.walk(self.automaton.initial(), &mut prefix, len, count, &mut out);
            if out.len() == before {
                // the automaton always has a_0 --1--> …, so this is unreachable for valid specs
                break;
            }
            len += 1;
        }
        out
    }

    fn walk(&self, state: usize, prefix: &mut Vec<Digit>, len: usize, count: usize, out: &mut Vec<Word>) {
        if out.len() >= count {
            return;
        }
        if prefix.len() == len {
            out.push(Word::new(prefix.clone()));
            return;
        }
        let first = if prefix.is_empty() { 1 } else { 0 };
        for d in first..=self.max_digit() {
            if let Some(next) = self.automaton.step(state, d) {
                prefix.push(d);
                self.walk(next, prefix, len, count, out);
                prefix.pop();
                if out.len() >= count {
                    return;
                }
            }
        }
    }

    /// `rep(0), …, rep(count - 1)` through greedy division.
    pub fn words(&self, count: u64) -> Vec<Word> {
        (0..count).map(|n| self.rep(n)).collect()
    }

    /// `U_β(n) / β^n`, which tends to the dominant coefficient `c_1`.
    pub fn growth_constant_estimate(&self, n: usize) -> Result<T> {
        let u = self.u(n)?;
        let n = i32::try_from(n).map_err(|_| Error::Overflow(format!("β^{n}")))?;
        Ok(T::from_count(u) / self.beta.powi(n))
    }

    /// `0.w` in base β: `Σ w_j β^{-j}` with `w_1` the first digit.
    pub fn base_value(&self, word: &Word) -> T {
        EventuallyPeriodic::new(word.digits().to_vec(), Vec::new()).value_at(self.beta)
    }
}

fn max_zero_run(w: &EventuallyPeriodic) -> usize {
    let mut digits = w.preperiod.clone();
    digits.extend_from_slice(&w.period);
    digits.extend_from_slice(&w.period);
    let mut best = 0;
    let mut run = 0;
    for d in digits {
        run = if d == 0 { run + 1 } else { 0 };
        best = best.max(run);
    }
    best
}
