//! Named property suites over a numeration system, shared by the `verify`
//! command and the test suites.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::binomial::{
    binom_words, binom_words_exact, binom_words_mod, lucas_binom_mod, Exact, PrefixTrie, ResidueSpec,
};
use crate::error::Result;
use crate::hausdorff::{hausdorff_distance, sample_segment_set, sample_square_set, within_fattening, PointCloud};
use crate::numeration::{CustomLinearSystem, NumerationSystem};
use crate::scalar::Real;
use crate::star::{a0_approx, an_approx, p_of, segment_for, star_check, star_pairs, SegmentSet};
use crate::triangle::{u_set, BlockMode, TriangleBlock};
use crate::word::{Digit, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// The result of one property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        let status = if passed { Status::Pass } else { Status::Fail };
        CheckOutcome {
            name,
            status,
            detail: detail.into(),
        }
    }

    fn skip(name: &'static str, detail: impl Into<String>) -> Self {
        CheckOutcome {
            name,
            status: Status::Skip,
            detail: detail.into(),
        }
    }

    /// Counts from the first failing witness, if any.
    fn from_failures(name: &'static str, checked: usize, failure: Option<String>) -> Self {
        match failure {
            None => CheckOutcome::new(name, true, format!("{checked} cases")),
            Some(w) => CheckOutcome::new(name, false, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

/// Scales at which [`verify_all`] runs.
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    /// Integers checked by the round trip.
    pub round_trip: u64,
    /// Words checked by the language suites.
    pub word_count: usize,
    /// Longest word in the binomial and stability suites.
    pub maxlen: usize,
    pub residue: ResidueSpec,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            round_trip: 1000,
            word_count: 500,
            maxlen: 6,
            residue: ResidueSpec::odd(),
        }
    }
}

/// Every word over `{0, …, letters-1}` of length at most `maxlen`, leading zeros included.
pub fn all_words(letters: Digit, maxlen: usize) -> Vec<Word> {
    let mut words = vec![Word::empty()];
    for len in 1..=maxlen {
        words.extend((0..len).map(|_| 0..letters).multi_cartesian_product().map(Word::new));
    }
    words
}

/// `C(m, n)` for `m, n < size`, from the additive rule.
pub fn integer_binomials(size: usize) -> Vec<Vec<u128>> {
    let mut rows = vec![vec![0u128; size]; size];
    for m in 0..size {
        rows[m][0] = 1;
        for n in 1..=m {
            rows[m][n] = rows[m - 1][n - 1] + rows[m - 1][n];
        }
    }
    rows
}

// ---- numeration ----

pub fn round_trip<T: Real>(sys: &NumerationSystem<T>, count: u64) -> Result<CheckOutcome> {
    let mut prev: Option<Word> = None;
    for n in 0..count {
        let w = sys.rep(n);
        if sys.val(&w)? != n {
            return Ok(CheckOutcome::new(
                "round trip",
                false,
                format!("val(rep({n})) = {}", sys.val(&w)?),
            ));
        }
        if prev.as_ref().is_some_and(|p| p >= &w) {
            return Ok(CheckOutcome::new(
                "round trip",
                false,
                format!("rep({n}) = {w} not increasing"),
            ));
        }
        prev = Some(w);
    }
    Ok(CheckOutcome::new("round trip", true, format!("0 ≤ n < {count}")))
}

/// `w ∈ L ⇔ w0 ∈ L` on the first words of the language and on every word of
/// length at most 6 over the alphabet with a non-zero first letter.
pub fn bertrand<T: Real>(sys: &NumerationSystem<T>, count: usize) -> Result<CheckOutcome> {
    let letters = sys.max_digit() + 1;
    let mut candidates = sys.enumerate_language(count);
    let span = if letters > 3 { 4 } else { 6 };
    candidates.extend(
        all_words(letters, span)
            .into_iter()
            .filter(|w| w.digits().first().is_some_and(|&d| d > 0)),
    );
    let failure = candidates.iter().filter(|w| !w.is_empty()).find_map(|w| {
        let (a, b) = (sys.is_in_language(w, false), sys.is_in_language(&w.pushed(0), false));
        (a != b).then(|| format!("{w}: in L = {a}, with 0 appended = {b}"))
    });
    Ok(CheckOutcome::from_failures(
        "Bertrand property",
        candidates.len(),
        failure,
    ))
}

/// The automaton accepts every greedy representation, and every accepted
/// word of length at most `maxlen` is the greedy representation of its value.
pub fn automaton_agreement<T: Real>(sys: &NumerationSystem<T>, count: u64, maxlen: usize) -> Result<CheckOutcome> {
    let name = "automaton/greedy agreement";
    if let Some(n) = (0..count).find(|&n| !sys.is_in_language(&sys.rep(n), false)) {
        return Ok(CheckOutcome::new(
            name,
            false,
            format!("rep({n}) = {} rejected", sys.rep(n)),
        ));
    }
    let accepted = sys.enumerate_language(sys.u(maxlen)? as usize + 1);
    let accepted: Vec<&Word> = accepted.iter().filter(|w| w.len() <= maxlen).collect();
    for w in &accepted {
        let n = sys.val(w)?;
        if &&sys.rep(n) != w {
            return Ok(CheckOutcome::new(
                name,
                false,
                format!("{w} accepted but rep({n}) = {}", sys.rep(n)),
            ));
        }
    }
    Ok(CheckOutcome::new(
        name,
        true,
        format!("{count} representations, {} accepted words", accepted.len()),
    ))
}

/// Longest run of consecutive words ending in 0 among the first `count`.
pub fn longest_zero_ending_run<T: Real>(sys: &NumerationSystem<T>, count: usize) -> usize {
    sys.enumerate_language(count)
        .iter()
        .scan(0usize, |run, w| {
            *run = if w.ends_with_zero() { *run + 1 } else { 0 };
            Some(*run)
        })
        .max()
        .unwrap_or(0)
}

/// Runs of consecutive words ending in 0 are at most `C_β + 1` long. The
/// bound is attained when `d*_β(1)` starts with `1 0^{C_β}`, and may be
/// strict otherwise (`d*_β(1) = (2100)^ω` gives runs of 2).
pub fn trailing_zero_runs<T: Real>(sys: &NumerationSystem<T>, count: usize) -> Result<CheckOutcome> {
    let run = longest_zero_ending_run(sys, count);
    let bound = sys.c_beta() + 1;
    let note = if run == bound { "attained" } else { "not attained" };
    Ok(CheckOutcome::new(
        "trailing-zero runs",
        run <= bound,
        format!("longest run {run}, C_β + 1 = {bound} ({note})"),
    ))
}

pub fn numeric_consistency<T: Real>(sys: &NumerationSystem<T>) -> Result<CheckOutcome> {
    let gap = (sys.quasi_greedy().value_at(sys.beta()) - T::one()).abs();
    let limit = sys.tolerance() * T::lit(10.0);
    Ok(CheckOutcome::new(
        "numeric consistency",
        gap <= limit,
        format!("|0.d*(β) − 1| = {gap:e}"),
    ))
}

/// The system with coefficients `1, 1` and initial values `1, 3` accepts
/// `2` but not `20`, and represents 6 as `102`.
pub fn custom_non_bertrand() -> Result<CheckOutcome> {
    let mut sys = CustomLinearSystem::new(vec![1, 1], vec![1, 3])?;
    let two: Word = "2".parse()?;
    let rep6 = sys.rep(6)?;
    let ok = sys.is_normal(&two)? && !sys.is_normal(&two.pushed(0))? && rep6.to_plain() == "102";
    Ok(CheckOutcome::new(
        "non-Bertrand custom system",
        ok,
        format!("rep(6) = {rep6}"),
    ))
}

// ---- binomial coefficients ----

/// Counts of every subword of `u`, by enumerating index subsets.
fn subword_counts(u: &Word) -> HashMap<Vec<Digit>, u64> {
    let mut counts = HashMap::new();
    for mask in 0u64..(1u64 << u.len()) {
        let sub: Vec<Digit> = u
            .digits()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &d)| d)
            .collect();
        *counts.entry(sub).or_insert(0) += 1;
    }
    counts
}

/// The counting routine against subset enumeration, for every `u` in `us`
/// and every `v` in `vs`. Words of `u` are limited to 20 letters.
pub fn oracle_equivalence(name: &'static str, us: &[Word], vs: &[Word]) -> Result<CheckOutcome> {
    let trie = PrefixTrie::new(vs);
    let arith = Exact::<u64>::new();
    let failure = us
        .par_iter()
        .map(|u| -> Result<Option<String>> {
            let oracle = subword_counts(u);
            let row = trie.row(&arith, u)?;
            Ok(vs.iter().zip(row).find_map(|(v, got)| {
                let want = oracle.get(v.digits()).copied().unwrap_or(0);
                (got != want).then(|| format!("binom({u}, {v}) = {got}, expected {want}"))
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    Ok(CheckOutcome::from_failures(name, us.len() * vs.len(), failure))
}

/// `binom(u0^k, v0^k) = Σ_j C(k,j) binom(u, v0^j)` over the given words.
pub fn zero_block_identity(words: &[Word], max_k: usize) -> Result<CheckOutcome> {
    let c = integer_binomials(max_k + 1);
    let mut checked = 0;
    for u in words {
        for v in words {
            for (k, row) in c.iter().enumerate() {
                let lhs: u128 = binom_words(&u.padded(k), &v.padded(k))?;
                let mut rhs = 0u128;
                for (j, &coeff) in row.iter().enumerate().take(k + 1) {
                    rhs += coeff * binom_words::<u128>(u, &v.padded(j))?;
                }
                checked += 1;
                if lhs != rhs {
                    return Ok(CheckOutcome::new(
                        "zero-block identity",
                        false,
                        format!("u={u} v={v} k={k}: {lhs} ≠ {rhs}"),
                    ));
                }
            }
        }
    }
    Ok(CheckOutcome::new(
        "zero-block identity",
        true,
        format!("{checked} cases"),
    ))
}

/// `binom(a^m, a^n) = C(m, n)` for `n ≤ m ≤ max_m`.
pub fn unary_reduction(letter: Digit, max_m: usize) -> Result<CheckOutcome> {
    let c = integer_binomials(max_m + 1);
    let failure = (0..=max_m).cartesian_product(0..=max_m).find_map(|(m, n)| {
        let got = binom_words::<u128>(&Word::repeat(letter, m), &Word::repeat(letter, n)).ok()?;
        let want = if n <= m { c[m][n] } else { 0 };
        (got != want).then(|| format!("binom({letter}^{m}, {letter}^{n}) = {got}, C = {want}"))
    });
    Ok(CheckOutcome::from_failures(
        "unary reduction",
        (max_m + 1) * (max_m + 1),
        failure,
    ))
}

/// Lucas' theorem against exact binomials reduced mod `p`.
pub fn lucas_consistency(bound: usize, primes: &[u64]) -> Result<CheckOutcome> {
    let c = integer_binomials(bound);
    for &p in primes {
        for (m, row) in c.iter().enumerate() {
            for (n, &exact) in row.iter().enumerate() {
                let want = (exact % p as u128) as u64;
                let got = lucas_binom_mod(m as u64, n as u64, p)?;
                if got != want {
                    return Ok(CheckOutcome::new(
                        "Lucas consistency",
                        false,
                        format!("C({m},{n}) mod {p}: {got} ≠ {want}"),
                    ));
                }
            }
        }
    }
    Ok(CheckOutcome::new(
        "Lucas consistency",
        true,
        format!("m, n < {bound}, p ∈ {primes:?}"),
    ))
}

/// Reduction mod `q` agrees with the exact count.
pub fn modular_agreement(words: &[Word], q: u64) -> Result<CheckOutcome> {
    let modulus = num_bigint::BigUint::from(q);
    for u in words {
        for v in words {
            let exact = binom_words_exact(u, v) % &modulus;
            let reduced = binom_words_mod(u, v, q)?;
            if exact != num_bigint::BigUint::from(reduced) {
                return Ok(CheckOutcome::new(
                    "modular agreement",
                    false,
                    format!("binom({u}, {v}) mod {q}"),
                ));
            }
        }
    }
    Ok(CheckOutcome::new(
        "modular agreement",
        true,
        format!("{} pairs mod {q}", words.len() * words.len()),
    ))
}

// ---- triangle ----

/// Diagonal and first column of the exact block are all ones.
pub fn unit_diagonal_and_column<T: Real>(sys: &NumerationSystem<T>, size: usize) -> Result<CheckOutcome> {
    let block = TriangleBlock::new(sys, size, size, BlockMode::Exact)?;
    let failure = (0..size).find_map(|i| {
        (block.get(i, i) != 1 || block.get(i, 0) != 1)
            .then(|| format!("row {} = {:?}", block.row_word(i), block.row(i)))
    });
    Ok(CheckOutcome::from_failures(
        "unit diagonal and first column",
        size,
        failure,
    ))
}

/// The residue classes `1, …, q-1` and the zero class tile the grid.
pub fn residue_partition<T: Real>(sys: &NumerationSystem<T>, level: usize, q: u64) -> Result<CheckOutcome> {
    let size = sys.u(level)?;
    let mut seen = vec![0u32; (size * size) as usize];
    for r in 1..q {
        for c in u_set(sys, level, ResidueSpec::new(q, r)?)?.cells() {
            seen[(c.row * size + c.col) as usize] += 1;
        }
    }
    let block = TriangleBlock::new(sys, size as usize, size as usize, BlockMode::Residue(q))?;
    let failure = (0..size as usize)
        .cartesian_product(0..size as usize)
        .find_map(|(i, j)| {
            let expected = u32::from(block.get(i, j) != 0);
            (seen[i * size as usize + j] != expected)
                .then(|| format!("cell ({j}, {i}) covered {} times", seen[i * size as usize + j]))
        });
    Ok(CheckOutcome::from_failures(
        "residue partition",
        (size * size) as usize,
        failure,
    ))
}

/// In an integer base, rows and columns indexed by `a^m` hold a copy of Pascal's triangle.
pub fn pascal_copies<T: Real>(sys: &NumerationSystem<T>, max_m: usize) -> Result<CheckOutcome> {
    let name = "copies of Pascal's triangle";
    if !(sys.spec().preperiod().is_empty() && sys.spec().period().len() == 1) {
        return Ok(CheckOutcome::skip(name, "not an integer base"));
    }
    let c = integer_binomials(max_m + 1);
    let mut checked = 0;
    for a in 1..=sys.max_digit() {
        let index: Vec<u64> = (0..=max_m)
            .map(|m| sys.val(&Word::repeat(a, m)))
            .collect::<Result<_>>()?;
        let size = *index.last().unwrap() as usize + 1;
        if size > 4096 {
            continue;
        }
        let block = TriangleBlock::new(sys, size, size, BlockMode::Exact)?;
        for m in 0..=max_m {
            for n in 0..=m {
                checked += 1;
                if block.get(index[m] as usize, index[n] as usize) as u128 != c[m][n] {
                    return Ok(CheckOutcome::new(name, false, format!("letter {a}, m={m}, n={n}")));
                }
            }
        }
    }
    Ok(CheckOutcome::new(name, true, format!("{checked} entries")))
}

/// Black pixels of the bitmap equal `|cells| · scale²`.
pub fn bitmap_count<T: Real>(
    sys: &NumerationSystem<T>,
    level: usize,
    residue: ResidueSpec,
    scale: usize,
) -> Result<CheckOutcome> {
    let set = u_set(sys, level, residue)?;
    let mut buf = Vec::new();
    set.write_pbm(scale, &mut buf)?;
    let text = String::from_utf8_lossy(&buf);
    let black = text
        .lines()
        .skip(2)
        .flat_map(|l| l.split_whitespace())
        .filter(|&t| t == "1")
        .count();
    let want = set.len() * scale * scale;
    Ok(CheckOutcome::new(
        "bitmap/count consistency",
        black == want,
        format!("{black} black pixels, {want} expected"),
    ))
}

// ---- stability condition and segments ----

pub fn star_implies_residue<T: Real>(
    sys: &NumerationSystem<T>,
    pairs: &[(Word, Word)],
    residue: ResidueSpec,
) -> Result<CheckOutcome> {
    for (u, v) in pairs {
        if binom_words_mod(u, v, residue.modulus())? != residue.residue() {
            return Ok(CheckOutcome::new("(⋆) implies residue", false, format!("({u}, {v})")));
        }
    }
    let _ = sys;
    Ok(CheckOutcome::new(
        "(⋆) implies residue",
        true,
        format!("{} pairs", pairs.len()),
    ))
}

/// Every `(u, u)` with `|u| ≤ maxlen` satisfies the condition for `r = 1`.
pub fn diagonal_pairs<T: Real>(sys: &NumerationSystem<T>, maxlen: usize, residue: ResidueSpec) -> Result<CheckOutcome> {
    let name = "(u, u) pairs";
    if residue.residue() != 1 {
        return Ok(CheckOutcome::skip(name, "residue class is not 1"));
    }
    for u in sys.words(sys.u(maxlen)?) {
        if !star_check(sys, &u, &u, residue)? {
            return Ok(CheckOutcome::new(name, false, format!("({u}, {u})")));
        }
    }
    Ok(CheckOutcome::new(name, true, format!("|u| ≤ {maxlen}")))
}

pub fn extension_closure<T: Real>(
    sys: &NumerationSystem<T>,
    pairs: &[(Word, Word)],
    residue: ResidueSpec,
) -> Result<CheckOutcome> {
    let mut checked = 0;
    for (u, v) in pairs.iter().filter(|(u, _)| !u.is_empty()) {
        let p = p_of(sys, u, v)?;
        for a in sys.alphabet() {
            let (ua, va) = (u.padded(p).pushed(a), v.padded(p).pushed(a));
            if !(sys.is_in_language(&ua, false) && sys.is_in_language(&va, false)) {
                continue;
            }
            checked += 1;
            if !star_check(sys, &ua, &va, residue)? {
                return Ok(CheckOutcome::new(
                    "closure under extension",
                    false,
                    format!("({u}, {v}) with {a}"),
                ));
            }
        }
    }
    Ok(CheckOutcome::new(
        "closure under extension",
        true,
        format!("{checked} extensions"),
    ))
}

/// `binom(u0^p w, v0^p w) ≡ r` for every `w ∈ 0*L` with `|w| ≤ wlen`.
pub fn propagation<T: Real>(
    sys: &NumerationSystem<T>,
    pairs: &[(Word, Word)],
    residue: ResidueSpec,
    wlen: usize,
) -> Result<CheckOutcome> {
    let tails: Vec<Word> = sys
        .words(sys.u(wlen)?)
        .into_iter()
        .flat_map(|w| (0..=wlen - w.len()).map(move |k| w.left_padded(k)))
        .collect();
    let failure = pairs
        .par_iter()
        .filter(|(u, _)| !u.is_empty())
        .map(|(u, v)| -> Result<Option<String>> {
            let p = p_of(sys, u, v)?;
            let (up, vp) = (u.padded(p), v.padded(p));
            for w in &tails {
                if binom_words_mod(&up.concat(w), &vp.concat(w), residue.modulus())? != residue.residue() {
                    return Ok(Some(format!("({u}, {v}) followed by {w}")));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    Ok(CheckOutcome::from_failures(
        "propagation",
        pairs.len() * tails.len(),
        failure,
    ))
}

/// Normalized cell corners of `(v0^{p+n}, u0^{p+n})` approach the segment's
/// first endpoint: within `tol` once `n = steps`.
pub fn endpoint_convergence<T: Real>(
    sys: &NumerationSystem<T>,
    u: &Word,
    v: &Word,
    steps: usize,
    tol: T,
) -> Result<CheckOutcome> {
    let seg = segment_for::<T>(sys, u, v)?;
    let k = seg.p + steps;
    let scale = T::from_count(sys.u(u.len() + k)?);
    let x = T::from_count(sys.val(&v.padded(k))?) / scale;
    let y = T::from_count(sys.val(&u.padded(k))?) / scale;
    let gap = (x - seg.a[0]).hypot(y - seg.a[1]);
    Ok(CheckOutcome::new(
        "endpoint convergence",
        gap < tol,
        format!("({u}, {v}) after {steps} zeros: distance {gap:e}"),
    ))
}

/// Segments have direction `β^{-|u|-p}(1, 1)` before any map and slope `β^j` after.
pub fn segment_geometry<T: Real>(
    sys: &NumerationSystem<T>,
    a0: &SegmentSet<T>,
    iters: usize,
    tol: T,
) -> Result<CheckOutcome> {
    let beta = sys.beta();
    for s in a0.iter() {
        let side = beta.powi(-((s.u.len() + s.p) as i32));
        if (s.b[0] - s.a[0] - side).abs() > tol || (s.b[1] - s.a[1] - side).abs() > tol {
            return Ok(CheckOutcome::new(
                "segment geometry",
                false,
                format!("S({}, {})", s.u, s.v),
            ));
        }
    }
    let an = an_approx(a0, iters, sys);
    for s in an.iter() {
        let want = beta.powi(s.j as i32);
        if (s.slope() - want).abs() > tol * want {
            return Ok(CheckOutcome::new(
                "segment geometry",
                false,
                format!("slope of h^{} c^{} S({}, {})", s.j, s.i, s.u, s.v),
            ));
        }
    }
    Ok(CheckOutcome::new(
        "segment geometry",
        true,
        format!("{} base segments, {} mapped", a0.len(), an.len()),
    ))
}

/// For `m < n ≤ max_n`, the iterated sets agree on `x ≥ β^{-m-1}`.
pub fn stabilization<T: Real>(
    sys: &NumerationSystem<T>,
    a0: &SegmentSet<T>,
    max_n: usize,
    tol: T,
) -> Result<CheckOutcome> {
    let sets: Vec<SegmentSet<T>> = (0..=max_n).map(|n| an_approx(a0, n, sys)).collect();
    for m in 0..max_n {
        let x0 = sys.beta().powi(-(m as i32 + 1));
        let reference = sets[m].clipped(x0, tol);
        for (n, set) in sets.iter().enumerate().skip(m + 1) {
            let other = set.clipped(x0, tol);
            let same = reference.len() == other.len()
                && reference
                    .iter()
                    .zip(&other)
                    .all(|(p, q)| p.iter().zip(q).all(|(a, b)| (*a - *b).abs() <= tol));
            if !same {
                return Ok(CheckOutcome::new(
                    "stabilization",
                    false,
                    format!("m={m} n={n}: {} vs {} pieces", reference.len(), other.len()),
                ));
            }
        }
    }
    Ok(CheckOutcome::new("stabilization", true, format!("m < n ≤ {max_n}")))
}

// ---- Hausdorff distance ----

/// Symmetry, the triangle inequality and the fattening characterization on
/// a family of clouds.
pub fn metric_properties<T: Real>(clouds: &[PointCloud<T>]) -> Result<Vec<CheckOutcome>> {
    let n = clouds.len();
    let mut d = vec![vec![T::zero(); n]; n];
    let mut asymmetric = None;
    let mut fattening = None;
    for i in 0..n {
        for j in 0..n {
            let est = hausdorff_distance(&clouds[i], &clouds[j])?;
            d[i][j] = est.distance;
            if i < j {
                let back = hausdorff_distance(&clouds[j], &clouds[i])?.distance;
                if back != est.distance && asymmetric.is_none() {
                    asymmetric = Some(format!("{} vs {}", clouds[i].provenance, clouds[j].provenance));
                }
                let eps = est.distance + est.error_bound;
                let inside =
                    within_fattening(&clouds[i], &clouds[j], eps)? && within_fattening(&clouds[j], &clouds[i], eps)?;
                let below = est.distance * (T::one() - T::lit(1e-9));
                let tight = est.distance == T::zero()
                    || !(within_fattening(&clouds[i], &clouds[j], below)?
                        && within_fattening(&clouds[j], &clouds[i], below)?);
                if !(inside && tight) && fattening.is_none() {
                    fattening = Some(format!("{} vs {}", clouds[i].provenance, clouds[j].provenance));
                }
            }
        }
    }
    let slack = T::lit(1e-12);
    let triangle = (0..n)
        .cartesian_product(0..n)
        .cartesian_product(0..n)
        .find_map(|((i, j), k)| (d[i][k] > d[i][j] + d[j][k] + slack).then(|| format!("clouds {i}, {j}, {k}")));
    Ok(vec![
        CheckOutcome::from_failures("Hausdorff symmetry", n * n, asymmetric),
        CheckOutcome::from_failures("Hausdorff triangle inequality", n * n * n, triangle),
        CheckOutcome::from_failures("Hausdorff fattening", n * n, fattening),
    ])
}

/// Halving both spacings moves the distance by no more than the bound
/// reported at the coarser spacing.
pub fn refinement<T: Real>(
    sys: &NumerationSystem<T>,
    level: usize,
    a: &SegmentSet<T>,
    residue: ResidueSpec,
) -> Result<CheckOutcome> {
    let set = u_set(sys, level, residue)?;
    let step = T::one() / T::from_count(set.size());
    let seg_step = T::lit(0.01);
    let coarse = hausdorff_distance(&sample_square_set(&set, step)?, &sample_segment_set(a, seg_step)?)?;
    let two = T::lit(2.0);
    let fine = hausdorff_distance(
        &sample_square_set(&set, step / two)?,
        &sample_segment_set(a, seg_step / two)?,
    )?;
    Ok(CheckOutcome::new(
        "refinement",
        fine.distance <= coarse.distance + coarse.error_bound,
        format!(
            "{:.6} → {:.6} (bound {:.6})",
            coarse.distance, fine.distance, coarse.error_bound
        ),
    ))
}

/// Longest length `L <= 10` whose accepted words number at most 100 000.
fn agreement_len<T: Real>(sys: &NumerationSystem<T>) -> usize {
    (1..=10)
        .rev()
        .find(|&len| sys.u(len).is_ok_and(|u| u <= 100_000))
        .unwrap_or(1)
}

/// Runs every suite on `sys`.
pub fn verify_all<T: Real>(sys: &NumerationSystem<T>, cfg: &VerifyConfig) -> Result<Vec<CheckOutcome>> {
    let maxlen = cfg.maxlen;
    let residue = cfg.residue;
    let mut out = vec![
        round_trip(sys, cfg.round_trip)?,
        bertrand(sys, cfg.word_count)?,
        automaton_agreement(sys, cfg.round_trip, agreement_len(sys))?,
        trailing_zero_runs(sys, cfg.word_count)?,
        numeric_consistency(sys)?,
        custom_non_bertrand()?,
    ];

    let lang = sys.words(sys.u(maxlen.min(8))?);
    let ternary_len = maxlen.min(8);
    let ternary = all_words(3, ternary_len);
    out.push(oracle_equivalence("oracle equivalence (ternary)", &ternary, &ternary)?);
    out.push(oracle_equivalence("oracle equivalence (language)", &lang, &lang)?);
    let short = sys.words(sys.u(maxlen.min(5))?);
    out.push(zero_block_identity(&short, 4)?);
    out.push(unary_reduction(1, 12)?);
    out.push(lucas_consistency(64, &[2, 3, 5])?);
    out.push(modular_agreement(&lang, residue.modulus())?);

    let level = maxlen.min(6);
    out.push(unit_diagonal_and_column(sys, sys.u(level)? as usize)?);
    out.push(residue_partition(sys, level.min(5), residue.modulus())?);
    out.push(pascal_copies(sys, 8)?);
    out.push(bitmap_count(sys, level, residue, 2)?);

    let pairs = star_pairs(sys, maxlen, residue)?;
    out.push(star_implies_residue(sys, &pairs, residue)?);
    out.push(diagonal_pairs(sys, maxlen, residue)?);
    out.push(extension_closure(sys, &pairs, residue)?);
    out.push(propagation(sys, &pairs, residue, 4)?);
    match pairs
        .iter()
        .find(|(u, v)| !u.is_empty() && u != v)
        .or(pairs.iter().find(|(u, _)| !u.is_empty()))
    {
        Some((u, v)) => {
            let p = segment_for::<T>(sys, u, v)?.p;
            let steps = (1..=20).rev().find(|&s| sys.u(u.len() + p + s).is_ok()).unwrap_or(1);
            out.push(endpoint_convergence(sys, u, v, steps, T::lit(0.01))?)
        }
        None => out.push(CheckOutcome::skip("endpoint convergence", "no non-empty pair")),
    }
    let tol = T::lit(1e-9).max(T::epsilon() * T::lit(64.0));
    let a0 = a0_approx(sys, maxlen, residue)?;
    out.push(segment_geometry(sys, &a0, 4, tol)?);
    out.push(stabilization(sys, &a0, 4, tol)?);

    if a0.is_empty() {
        out.push(CheckOutcome::skip("Hausdorff properties", "no segments"));
        return Ok(out);
    }
    let a2 = an_approx(&a0, 2, sys);
    let top = maxlen.min(6);
    let fine = T::one() / T::from_count(sys.u(top)?);
    let mut clouds = Vec::new();
    for n in [top.saturating_sub(2), top] {
        let set = u_set(sys, n, residue)?;
        if !set.is_empty() {
            clouds.push(sample_square_set(&set, fine)?);
        }
    }
    clouds.push(sample_segment_set(&a2, T::lit(0.01))?);
    out.extend(metric_properties(&clouds)?);
    out.push(refinement(sys, top.min(5), &a2, residue)?);
    Ok(out)
}
