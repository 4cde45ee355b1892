use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::word::{Digit, Word};

pub const BISECTION_ITERATION_CAP: usize = 200;

/// An infinite word `x_1 ⋯ x_m (y_1 ⋯ y_k)^ω`. An empty period stands for a
/// tail of zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodic {
    pub preperiod: Vec<Digit>,
    pub period: Vec<Digit>,
}

impl EventuallyPeriodic {
    pub fn new(preperiod: Vec<Digit>, period: Vec<Digit>) -> Self {
        EventuallyPeriodic { preperiod, period }
    }

    pub fn purely_periodic(period: Vec<Digit>) -> Self {
        EventuallyPeriodic {
            preperiod: Vec::new(),
            period,
        }
    }

    /// Digit at 0-based position `i`.
    pub fn digit(&self, i: usize) -> Digit {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else if self.period.is_empty() {
            0
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word::new((0..len).map(|i| self.digit(i)).collect())
    }

    /// The word obtained by dropping the first `shift` digits.
    pub fn shifted(&self, shift: usize) -> EventuallyPeriodic {
        if shift <= self.preperiod.len() {
            EventuallyPeriodic::new(self.preperiod[shift..].to_vec(), self.period.clone())
        } else if self.period.is_empty() {
            EventuallyPeriodic::new(Vec::new(), Vec::new())
        } else {
            let k = self.period.len();
            let r = (shift - self.preperiod.len()) % k;
            let mut period = self.period[r..].to_vec();
            period.extend_from_slice(&self.period[..r]);
            EventuallyPeriodic::new(Vec::new(), period)
        }
    }

    /// `Σ_{j≥1} x_j · base^{-j}` with the periodic tail summed as a geometric series.
    pub fn value_at<T: Real>(&self, base: T) -> T {
        let inv = base.recip();
        let mut scale = T::one();
        let mut head = T::zero();
        for &d in &self.preperiod {
            scale = scale * inv;
            head = head + T::from_u32(d).unwrap() * scale;
        }
        if self.period.is_empty() {
            return head;
        }
        let mut block = T::zero();
        let mut block_scale = T::one();
        for &d in &self.period {
            block_scale = block_scale * inv;
            block = block + T::from_u32(d).unwrap() * block_scale;
        }
        head + scale * block / (T::one() - block_scale)
    }

    /// Lexicographic comparison of the two infinite words.
    pub fn lex_cmp(&self, other: &EventuallyPeriodic) -> Ordering {
        // Both are periodic past max preperiod with period dividing k1*k2.
        let pre = self.preperiod.len().max(other.preperiod.len());
        let k1 = self.period.len().max(1);
        let k2 = other.period.len().max(1);
        let window = pre + k1 * k2;
        (0..window)
            .map(|i| self.digit(i).cmp(&other.digit(i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl fmt::Display for EventuallyPeriodic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pre = Word::new(self.preperiod.clone());
        let per = Word::new(self.period.clone());
        if !self.preperiod.is_empty() {
            write!(f, "{}", pre.to_plain())?;
        }
        if self.period.is_empty() {
            if self.preperiod.is_empty() {
                write!(f, "0^ω")?;
            }
            Ok(())
        } else if self.period.len() == 1 {
            write!(f, "{}^ω", per.to_plain())
        } else {
            write!(f, "({})^ω", per.to_plain())
        }
    }
}

/// The digits of `d_β(1)`: a preperiod `t_1 ⋯ t_m` and a period
/// `t_{m+1} ⋯ t_{m+k}`, empty when the expansion is finite.
///
/// Construction normalizes the pair so that `(m, k)` is minimal: the period is
/// reduced to its primitive root and the preperiod is trimmed while its last
/// digit can be absorbed by rotating the period. Integer bases `b` are
/// written `b-1;b-1` and normalize to the purely periodic `(b-1)^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BetaExpansionSpec {
    preperiod: Vec<Digit>,
    period: Vec<Digit>,
}

impl BetaExpansionSpec {
    /// Structural validation and normalization. Admissibility is checked
    /// separately by [`validate_admissibility`].
    pub fn new(preperiod: Vec<Digit>, period: Vec<Digit>) -> Result<Self> {
        if preperiod.is_empty() {
            return Err(Error::EmptyPreperiod);
        }
        if preperiod[0] == 0 {
            return Err(Error::InvalidSpec("the first digit t_1 must be at least 1".into()));
        }
        if period.is_empty() {
            if *preperiod.last().unwrap() == 0 {
                return Err(Error::InvalidSpec(
                    "a finite expansion must end with a non-zero digit".into(),
                ));
            }
            if preperiod.len() == 1 {
                let b = preperiod[0];
                return Err(Error::InvalidSpec(if b == 1 {
                    "the expansion `1` gives β = 1".to_string()
                } else {
                    format!("integer base {b} must be written as `{0};{0}`", b - 1)
                }));
            }
        } else if period.iter().all(|&d| d == 0) {
            return Err(Error::InvalidSpec(
                "a period of zeros denotes a finite expansion; drop it".into(),
            ));
        }
        let mut spec = BetaExpansionSpec { preperiod, period };
        spec.normalize();
        Ok(spec)
    }

    fn normalize(&mut self) {
        if self.period.is_empty() {
            return;
        }
        let k = self.period.len();
        let root = (1..=k)
            .find(|&d| k.is_multiple_of(d) && (d..k).all(|i| self.period[i] == self.period[i - d]))
            .unwrap();
        self.period.truncate(root);
        while let Some(&last) = self.preperiod.last() {
            if last != *self.period.last().unwrap() {
                break;
            }
            self.preperiod.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn preperiod(&self) -> &[Digit] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Digit] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// `t_1 ⋯ t_m` followed by one period: the labels along the automaton chain.
    pub fn chain_digits(&self) -> Vec<Digit> {
        let mut t = self.preperiod.clone();
        t.extend_from_slice(&self.period);
        t
    }

    /// `t_1 = ⌈β⌉ - 1`, the largest digit.
    pub fn t1(&self) -> Digit {
        self.preperiod.first().or(self.period.first()).copied().unwrap()
    }

    pub fn as_word(&self) -> EventuallyPeriodic {
        EventuallyPeriodic::new(self.preperiod.clone(), self.period.clone())
    }
}

impl fmt::Display for BetaExpansionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ds: &[Digit]| ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
        if self.preperiod.is_empty() {
            write!(f, "{0};{0}", join(&self.period))
        } else if self.period.is_empty() {
            write!(f, "{}", join(&self.preperiod))
        } else {
            write!(f, "{};{}", join(&self.preperiod), join(&self.period))
        }
    }
}

fn parse_digit_list(text: &str, part: &str) -> Result<Vec<Digit>> {
    part.split(',')
        .map(|tok| {
            let tok = tok.trim();
            if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Syntax {
                    text: text.to_string(),
                    reason: format!("`{tok}` is not a non-negative integer"),
                });
            }
            tok.parse::<Digit>().map_err(|_| Error::DigitOutOfRange {
                digit: u64::MAX,
                reason: format!("`{tok}` does not fit a digit"),
            })
        })
        .collect()
}

/// Parses `DIGITS [";" DIGITS]`, normalizes, and checks admissibility.
pub fn parse_beta_spec(text: &str) -> Result<BetaExpansionSpec> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::EmptyPreperiod);
    }
    let mut parts = trimmed.split(';');
    let pre_text = parts.next().unwrap();
    let period_text = parts.next();
    if parts.next().is_some() {
        return Err(Error::Syntax {
            text: text.to_string(),
            reason: "at most one `;` separating preperiod and period".into(),
        });
    }
    if pre_text.trim().is_empty() {
        return Err(Error::EmptyPreperiod);
    }
    let preperiod = parse_digit_list(text, pre_text)?;
    let period = match period_text {
        Some(p) => parse_digit_list(text, p)?,
        None => Vec::new(),
    };
    let spec = BetaExpansionSpec::new(preperiod, period)?;
    validate_admissibility(&spec)?;
    Ok(spec)
}

/// `d*_β(1)`: `(t_1 ⋯ t_{m-1}(t_m - 1))^ω` for finite expansions, the
/// expansion itself otherwise.
pub fn quasi_greedy_expansion(spec: &BetaExpansionSpec) -> EventuallyPeriodic {
    if spec.is_finite() {
        let mut period = spec.preperiod.clone();
        *period.last_mut().unwrap() -= 1;
        EventuallyPeriodic::purely_periodic(period)
    } else {
        spec.as_word()
    }
}

/// Every digit must be at most `t_1`, and every proper left shift of
/// `d*_β(1)` must be lexicographically at most `d*_β(1)`.
pub fn validate_admissibility(spec: &BetaExpansionSpec) -> Result<()> {
    let t1 = spec.t1();
    if let Some(&d) = spec.chain_digits().iter().find(|&&d| d > t1) {
        return Err(Error::DigitOutOfRange {
            digit: d as u64,
            reason: format!("digits of d_β(1) must not exceed t_1 = {t1}"),
        });
    }
    let star = quasi_greedy_expansion(spec);
    let window = star.preperiod.len() + 2 * star.period.len();
    for shift in 1..window.max(1) {
        if star.shifted(shift).lex_cmp(&star) == Ordering::Greater {
            return Err(Error::NotAdmissible { shift });
        }
    }
    Ok(())
}

/// The root `β > 1` of `1 = Σ d*_j x^{-j}`, by bisection on
/// `(1 + 1e-9, t_1 + 1]` until the residual is within `tol`.
///
/// Also stops when the bracket can no longer be split at the precision of
/// `T`, which is what limits `f32`.
pub fn beta_value<T: Real>(spec: &BetaExpansionSpec, tol: T) -> Result<T> {
    if tol.is_nan() || tol <= T::zero() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let star = quasi_greedy_expansion(spec);
    let f = |x: T| star.value_at(x) - T::one();
    let mut lo = T::one() + T::lit(1e-9);
    let mut hi = T::from_u32(spec.t1() + 1).unwrap();
    let f_hi = f(hi);
    if f_hi.abs() <= tol {
        return Ok(hi);
    }
    if f(lo) <= T::zero() || f_hi > T::zero() {
        return Err(Error::InvalidSpec("no root of the expansion in (1, t_1 + 1]".into()));
    }
    for _ in 0..BISECTION_ITERATION_CAP {
        let mid = (lo + hi) / T::lit(2.0);
        let fm = f(mid);
        if fm.abs() <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if fm > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence(BISECTION_ITERATION_CAP))
}
