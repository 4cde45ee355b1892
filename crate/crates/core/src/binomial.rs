//! Binomial coefficients of words: the number of occurrences of `v` as a
//! scattered subword of `u`.
//!
//! Counting is generic over a [`CountArith`]: exact integers through
//! `num-traits` (`u64`, `u128`, `BigUint`), residues modulo a prime, or a
//! saturating counter when only "zero or not" matters.

use std::marker::PhantomData;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{CheckedAdd, One, Zero};

use crate::error::{Error, Result};
use crate::word::{Digit, Word};

/// Addition semiring used by the subword-counting recurrences.
pub trait CountArith: Sync {
    type Value: Clone + Send + Sync;
    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
}

/// Exact counting in `C`; overflow is an error.
#[derive(Clone, Copy, Debug, Default)]
pub struct Exact<C>(PhantomData<C>);

impl<C> Exact<C> {
    pub fn new() -> Self {
        Exact(PhantomData)
    }
}

impl<C> CountArith for Exact<C>
where
    C: Zero + One + CheckedAdd + Clone + Send + Sync,
{
    type Value = C;

    fn zero(&self) -> C {
        C::zero()
    }

    fn one(&self) -> C {
        C::one()
    }

    fn add(&self, a: &C, b: &C) -> Result<C> {
        a.checked_add(b)
            .ok_or_else(|| Error::Overflow("binomial coefficient of words".into()))
    }
}

/// Counting modulo a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Modular {
    q: u64,
}

impl Modular {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(Modular { q })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }
}

impl CountArith for Modular {
    type Value = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.q
    }

    fn add(&self, a: &u64, b: &u64) -> Result<u64> {
        let s = a + b;
        Ok(if s >= self.q { s - self.q } else { s })
    }
}

/// Saturating `u64` counting: exact below `u64::MAX`, and never wraps to zero.
#[derive(Clone, Copy, Debug, Default)]
pub struct Saturating;

impl CountArith for Saturating {
    type Value = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, a: &u64, b: &u64) -> Result<u64> {
        Ok(a.saturating_add(*b))
    }
}

/// `binom(u, v)` under `arith`, via
/// `binom(ua, vb) = binom(u, vb) + [a = b] · binom(u, v)`.
///
/// The table holds one entry per prefix of `v`, updated right to left for
/// each letter of `u`.
pub fn binom_words_in<A: CountArith>(arith: &A, u: &Word, v: &Word) -> Result<A::Value> {
    let v = v.digits();
    if v.len() > u.len() {
        return Ok(arith.zero());
    }
    let mut table = vec![arith.zero(); v.len() + 1];
    table[0] = arith.one();
    for (seen, &a) in u.digits().iter().enumerate() {
        // prefixes of v longer than seen + 1 cannot occur yet
        let top = v.len().min(seen + 1);
        for j in (1..=top).rev() {
            if v[j - 1] == a {
                table[j] = arith.add(&table[j], &table[j - 1])?;
            }
        }
    }
    Ok(table.pop().unwrap())
}

/// Exact `binom(u, v)` in any `num-traits` integer; overflow is an error.
pub fn binom_words<C>(u: &Word, v: &Word) -> Result<C>
where
    C: Zero + One + CheckedAdd + Clone + Send + Sync,
{
    binom_words_in(&Exact::<C>::new(), u, v)
}

/// Exact `binom(u, v)` with arbitrary precision.
pub fn binom_words_exact(u: &Word, v: &Word) -> BigUint {
    binom_words_in(&Exact::<BigUint>::new(), u, v).expect("arbitrary precision cannot overflow")
}

/// `binom(u, v) mod q` for a prime `q`.
pub fn binom_words_mod(u: &Word, v: &Word, q: u64) -> Result<u64> {
    binom_words_in(&Modular::new(q)?, u, v)
}

/// Whether `v` occurs at least once as a scattered subword of `u`.
pub fn occurs_as_subword(u: &Word, v: &Word) -> bool {
    binom_words_in(&Saturating, u, v).map(|c| c > 0).unwrap_or(true)
}

/// The prefixes of a set of target words arranged as a trie, so that one
/// pass over a source word counts every target at once.
#[derive(Clone, Debug)]
pub struct PrefixTrie {
    parent: Vec<usize>,
    /// node ids ending with each letter, deepest first
    by_letter: Vec<Vec<usize>>,
    targets: Vec<usize>,
}

impl PrefixTrie {
    pub fn new(words: &[Word]) -> Self {
        use std::collections::HashMap;
        let mut parent = vec![usize::MAX];
        let mut letter: Vec<Digit> = vec![0];
        let mut depth = vec![0usize];
        let mut children: HashMap<(usize, Digit), usize> = HashMap::new();
        let targets = words
            .iter()
            .map(|w| {
                w.digits().iter().fold(0usize, |node, &a| {
                    *children.entry((node, a)).or_insert_with(|| {
                        parent.push(node);
                        letter.push(a);
                        depth.push(depth[node] + 1);
                        parent.len() - 1
                    })
                })
            })
            .collect();
        let max_letter = letter.iter().skip(1).copied().max().unwrap_or(0) as usize;
        let mut by_letter = vec![Vec::new(); max_letter + 1];
        for node in 1..parent.len() {
            by_letter[letter[node] as usize].push(node);
        }
        for nodes in &mut by_letter {
            nodes.sort_by_key(|&n| std::cmp::Reverse(depth[n]));
        }
        PrefixTrie {
            parent,
            by_letter,
            targets,
        }
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    /// `binom(u, v)` for every target `v`, in the order given to [`PrefixTrie::new`].
    pub fn row<A: CountArith>(&self, arith: &A, u: &Word) -> Result<Vec<A::Value>> {
        let mut counts = vec![arith.zero(); self.parent.len()];
        counts[0] = arith.one();
        for &a in u.digits() {
            if let Some(nodes) = self.by_letter.get(a as usize) {
                for &node in nodes {
                    let parent = self.parent[node];
                    counts[node] = arith.add(&counts[node], &counts[parent])?;
                }
            }
        }
        Ok(self.targets.iter().map(|&t| counts[t].clone()).collect())
    }
}

/// `[binom(u, v) for v in vs]` exactly in `u64`, sharing work across common prefixes.
pub fn binom_row(u: &Word, vs: &[Word]) -> Result<Vec<u64>> {
    PrefixTrie::new(vs).row(&Exact::<u64>::new(), u)
}

/// Trial division up to `√q`.
pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// `C(a, b) mod p` for digits `a, b < p`, zero when `a < b`.
fn small_binom_mod(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..b {
        num = mul(num, a - i);
        den = mul(den, i + 1);
    }
    mul(num, pow_mod(den, p - 2, p))
}

/// `C(m, n) mod p` as the product of digitwise binomials of the base-`p`
/// expansions.
pub fn lucas_binom_mod(m: u64, n: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (mut m, mut n) = (m, n);
    let mut acc = 1 % p;
    while (m > 0 || n > 0) && acc != 0 {
        let term = small_binom_mod(m % p, n % p, p);
        acc = ((acc as u128 * term as u128) % p as u128) as u64;
        m /= p;
        n /= p;
    }
    Ok(acc)
}

pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Counts index tuples `i_1 < ⋯ < i_k` with `u[i_j] = v[j]` by enumerating
/// every `k`-subset of positions. Exponential; limited to `|u| ≤ 20`.
pub fn brute_force_count(u: &Word, v: &Word) -> Result<u64> {
    if u.len() > BRUTE_FORCE_LIMIT {
        return Err(Error::BruteForceGuard {
            len: u.len(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let (u, v) = (u.digits(), v.digits());
    if v.len() > u.len() {
        return Ok(0);
    }
    let count = (0..u.len())
        .combinations(v.len())
        .filter(|idx| idx.iter().zip(v).all(|(&i, &b)| u[i] == b))
        .count();
    Ok(count as u64)
}

/// A prime modulus `q` and a non-zero residue class `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueSpec {
    q: u64,
    r: u64,
}

impl ResidueSpec {
    pub fn new(q: u64, r: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if r == 0 || r >= q {
            return Err(Error::InvalidResidue { q, r });
        }
        Ok(ResidueSpec { q, r })
    }

    /// Odd entries: `q = 2`, `r = 1`.
    pub fn odd() -> Self {
        ResidueSpec { q: 2, r: 1 }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn residue(&self) -> u64 {
        self.r
    }

    pub fn arith(&self) -> Modular {
        Modular { q: self.q }
    }
}
