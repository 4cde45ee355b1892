use crate::error::{Error, Result};
use crate::word::{Digit, Word};

/// A linear numeration system given by its recurrence and initial values:
/// `U(n + k) = a_{k-1} U(n + k - 1) + ⋯ + a_0 U(n)`.
///
/// Used to exhibit systems without the Bertrand property, such as `F′`
/// (`1, 3, 4, 7, 11, …`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CustomLinearSystem {
    coefficients: Vec<i64>,
    values: Vec<u64>,
}

impl CustomLinearSystem {
    /// `coefficients` are `a_0, …, a_{k-1}`; `initial` are `U(0), …, U(k-1)`.
    pub fn new(coefficients: Vec<i64>, initial: Vec<u64>) -> Result<Self> {
        if coefficients.is_empty() || coefficients.len() != initial.len() {
            return Err(Error::InvalidArgument(
                "need as many initial values as recurrence coefficients (at least one)".into(),
            ));
        }
        if initial[0] != 1 {
            return Err(Error::InvalidArgument("U(0) must be 1".into()));
        }
        if initial.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::InvalidArgument(
                "initial values must be strictly increasing".into(),
            ));
        }
        Ok(CustomLinearSystem {
            coefficients,
            values: initial,
        })
    }

    fn next_term(&self) -> Result<Option<u64>> {
        let k = self.coefficients.len();
        let n = self.values.len();
        let mut acc: i128 = 0;
        for (i, &a) in self.coefficients.iter().enumerate() {
            acc += a as i128 * self.values[n - k + i] as i128;
        }
        let last = *self.values.last().unwrap();
        if acc > u64::MAX as i128 {
            return Ok(None);
        }
        if acc <= last as i128 {
            return Err(Error::InvalidArgument(
                "the recurrence is not strictly increasing".into(),
            ));
        }
        Ok(Some(acc as u64))
    }

    /// Extends the value table until it exceeds `n` (or would overflow).
    fn cover(&mut self, n: u64) -> Result<()> {
        while *self.values.last().unwrap() <= n {
            match self.next_term()? {
                Some(v) => self.values.push(v),
                None => break,
            }
        }
        Ok(())
    }

    pub fn u(&mut self, n: usize) -> Result<u64> {
        while self.values.len() <= n {
            match self.next_term()? {
                Some(v) => self.values.push(v),
                None => return Err(Error::Overflow(format!("U({n})"))),
            }
        }
        Ok(self.values[n])
    }

    /// Greedy representation by successive Euclidean division.
    pub fn rep(&mut self, n: u64) -> Result<Word> {
        self.cover(n)?;
        let len = self.values.partition_point(|&u| u <= n);
        let mut rest = n;
        let digits = self.values[..len]
            .iter()
            .rev()
            .map(|&u| {
                let d = rest / u;
                rest %= u;
                d as Digit
            })
            .collect();
        Ok(Word::new(digits))
    }

    pub fn val(&mut self, word: &Word) -> Result<u64> {
        if !word.is_empty() {
            self.u(word.len() - 1)?;
        }
        word.digits().iter().rev().enumerate().try_fold(0u64, |acc, (j, &d)| {
            (d as u64)
                .checked_mul(self.values[j])
                .and_then(|x| acc.checked_add(x))
                .ok_or_else(|| Error::Overflow(format!("val({word})")))
        })
    }

    /// Whether `word` is the greedy representation of its own value.
    pub fn is_normal(&mut self, word: &Word) -> Result<bool> {
        let n = self.val(word)?;
        Ok(self.rep(n)? == *word)
    }
}
