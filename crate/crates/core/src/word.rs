use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A digit of a representation. Digits may exceed 9 for large bases.
pub type Digit = u32;

/// A finite word of digits, most significant digit first. The empty word is ε.
///
/// Words are ordered genealogically: shorter words first, then
/// lexicographically by digit value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Digit>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(digits: Vec<Digit>) -> Self {
        Word(digits)
    }

    pub fn digits(&self) -> &[Digit] {
        &self.0
    }

    pub fn into_digits(self) -> Vec<Digit> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<Digit> {
        self.0.last().copied()
    }

    pub fn ends_with_zero(&self) -> bool {
        self.last() == Some(0)
    }

    /// `self · d`
    pub fn pushed(&self, d: Digit) -> Word {
        let mut digits = self.0.clone();
        digits.push(d);
        Word(digits)
    }

    /// `self · 0^count`
    pub fn padded(&self, count: usize) -> Word {
        let mut digits = self.0.clone();
        digits.resize(self.0.len() + count, 0);
        Word(digits)
    }

    /// `0^count · self`
    pub fn left_padded(&self, count: usize) -> Word {
        let mut digits = vec![0; count];
        digits.extend_from_slice(&self.0);
        Word(digits)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut digits = self.0.clone();
        digits.extend_from_slice(&other.0);
        Word(digits)
    }

    /// `a^count`
    pub fn repeat(digit: Digit, count: usize) -> Word {
        Word(vec![digit; count])
    }

    /// Textual form without the ε convention: concatenated digits when all
    /// are below 10, dot-separated otherwise, empty for ε.
    pub fn to_plain(&self) -> String {
        if self.0.iter().all(|&d| d < 10) {
            self.0.iter().map(|d| char::from(b'0' + d.to_owned() as u8)).collect()
        } else {
            self.0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(".")
        }
    }
}

impl From<Vec<Digit>> for Word {
    fn from(digits: Vec<Digit>) -> Self {
        Word(digits)
    }
}

impl From<&[Digit]> for Word {
    fn from(digits: &[Digit]) -> Self {
        Word(digits.to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&self.to_plain())
        }
    }
}

/// Parses `1010`, `10.2.0` (dot- or comma-separated multi-digit form), and
/// `ε` or the empty string for the empty word.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "ε" || s.eq_ignore_ascii_case("eps") {
            return Ok(Word::empty());
        }
        let bad = |reason: &str| Error::Syntax {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        if s.contains(['.', ',']) {
            s.split(['.', ','])
                .map(|tok| {
                    tok.trim()
                        .parse::<Digit>()
                        .map_err(|_| bad("expected a decimal digit value"))
                })
                .collect::<Result<Vec<_>>>()
                .map(Word)
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| bad("expected decimal digits")))
                .collect::<Result<Vec<_>>>()
                .map(Word)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn genealogical_order() {
        let mut words = [w("101"), w("1"), w("100"), w(""), w("10")];
        words.sort();
        let shown: Vec<_> = words.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["ε", "1", "10", "100", "101"]);
        assert!(w("11") < w("100"));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(w("ε"), Word::empty());
        assert_eq!(w("10.2.0").digits(), &[10, 2, 0]);
        assert_eq!(w("10,2").digits(), &[10, 2]);
        assert_eq!(w("10.2.0").to_string(), "10.2.0");
        assert!("1a".parse::<Word>().is_err());
    }

    #[test]
    fn padding() {
        assert_eq!(w("10").padded(2), w("1000"));
        assert_eq!(w("10").left_padded(1).digits(), &[0, 1, 0]);
        assert_eq!(w("10").pushed(1), w("101"));
    }
}
