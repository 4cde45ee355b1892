//! The stability condition on pairs of words, the slope-one segments it
//! produces, and the sets obtained from them under the maps `c` and `h`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::binomial::{binom_words_in, occurs_as_subword, ResidueSpec};
use crate::error::{Error, Result};
use crate::numeration::{EventuallyPeriodic, NumerationSystem};
use crate::scalar::Real;
use crate::word::Word;

/// Least `p` such that both `u0^p` and `v0^p` lead the automaton back to
/// `a_0`; `p(ε, ε) = 0`.
///
/// Appending zeros walks forward along the automaton chain until a state
/// with a non-zero label is left, so the search is capped at the number of
/// states. Exceeding the cap means the automaton is malformed.
pub fn p_of<T: Real>(sys: &NumerationSystem<T>, u: &Word, v: &Word) -> Result<usize> {
    let aut = sys.automaton();
    let state = |w: &Word| aut.run(w).ok_or_else(|| Error::NotInLanguage(w.to_string()));
    let (mut su, mut sv) = (state(u)?, state(v)?);
    let cap = aut.state_count();
    for p in 0..=cap {
        if su == aut.initial() && sv == aut.initial() {
            return Ok(p);
        }
        su = aut
            .step(su, 0)
            .ok_or_else(|| Error::NotInLanguage(u.padded(p + 1).to_string()))?;
        sv = aut
            .step(sv, 0)
            .ok_or_else(|| Error::NotInLanguage(v.padded(p + 1).to_string()))?;
    }
    Err(Error::PaddingCapExceeded {
        u: u.to_string(),
        v: v.to_string(),
        cap,
    })
}

/// The `(⋆)_r` condition: either `u = v = ε` and `r = 1`, or
/// `|u| ≥ |v| > 0`, `binom(u0^p, v0^p) ≡ r (mod q)` and no word `v0^p a`
/// occurs as a subword of `u0^p`.
pub fn star_check<T: Real>(sys: &NumerationSystem<T>, u: &Word, v: &Word, residue: ResidueSpec) -> Result<bool> {
    if u.is_empty() && v.is_empty() {
        return Ok(residue.residue() == 1);
    }
    if v.is_empty() || u.len() < v.len() {
        return Ok(false);
    }
    let p = p_of(sys, u, v)?;
    let up = u.padded(p);
    let vp = v.padded(p);
    if binom_words_in(&residue.arith(), &up, &vp)? != residue.residue() {
        return Ok(false);
    }
    Ok(sys.alphabet().all(|a| !occurs_as_subword(&up, &vp.pushed(a))))
}

/// All pairs `(u, v)` of words of the language with `|v| ≤ |u| ≤ maxlen`
/// satisfying `(⋆)_r`, ordered genealogically by `u` then `v`.
pub fn star_pairs<T: Real>(
    sys: &NumerationSystem<T>,
    maxlen: usize,
    residue: ResidueSpec,
) -> Result<Vec<(Word, Word)>> {
    let count = sys.u(maxlen)?;
    let words = sys.words(count);
    let per_u: Vec<Vec<(Word, Word)>> = words
        .par_iter()
        .map(|u| {
            words
                .iter()
                .take_while(|v| v.len() <= u.len())
                .filter_map(|v| match star_check(sys, u, v, residue) {
                    Ok(true) => Some(Ok((u.clone(), v.clone()))),
                    Ok(false) => None,
                    Err(e) => Some(Err(e)),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(per_u.concat())
}

/// `0.w` in base β, optionally followed by an eventually periodic tail:
/// `Σ_j w_j β^{-j} + β^{-|w|} · 0.tail`.
pub fn base_beta_value<T: Real>(sys: &NumerationSystem<T>, digits: &Word, tail: Option<&EventuallyPeriodic>) -> T {
    let beta = sys.beta();
    let head = sys.base_value(digits);
    match tail {
        None => head,
        Some(tail) => head + beta.powi(-(digits.len() as i32)) * tail.value_at(beta),
    }
}

/// A closed segment with endpoints `a`, `b`, tagged with the pair it comes
/// from and the map `h^j ∘ c^i` applied to it.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment<T: Real> {
    pub a: [T; 2],
    pub b: [T; 2],
    pub u: Word,
    pub v: Word,
    pub p: usize,
    pub i: usize,
    pub j: usize,
}

impl<T: Real> Segment<T> {
    pub fn length(&self) -> T {
        (self.b[0] - self.a[0]).hypot(self.b[1] - self.a[1])
    }

    /// `(b - a).y / (b - a).x`
    pub fn slope(&self) -> T {
        (self.b[1] - self.a[1]) / (self.b[0] - self.a[0])
    }

    /// The part with `x ≥ x0`, if it has positive length.
    pub fn clip_x_at_least(&self, x0: T, tol: T) -> Option<[T; 4]> {
        let (lo, hi) = if self.a[0] <= self.b[0] {
            (self.a, self.b)
        } else {
            (self.b, self.a)
        };
        if hi[0] - x0 <= tol {
            return None;
        }
        if lo[0] >= x0 {
            return Some([lo[0], lo[1], hi[0], hi[1]]);
        }
        let t = (x0 - lo[0]) / (hi[0] - lo[0]);
        let y = lo[1] + t * (hi[1] - lo[1]);
        Some([x0, y, hi[0], hi[1]])
    }
}

/// `S_{u,v}`: from `A = (0.0^{|u|-|v|} v, 0.u)` to `A + β^{-|u|-p}(1, 1)`;
/// the pair `(ε, ε)` gives the diagonal from `(0,0)` to `(1,1)`.
pub fn segment_for<T: Real>(sys: &NumerationSystem<T>, u: &Word, v: &Word) -> Result<Segment<T>> {
    let p = p_of(sys, u, v)?;
    let ax = sys.base_value(&v.left_padded(u.len().saturating_sub(v.len())));
    let ay = sys.base_value(u);
    let side = sys.beta().powi(-((u.len() + p) as i32));
    Ok(Segment {
        a: [ax, ay],
        b: [ax + side, ay + side],
        u: u.clone(),
        v: v.clone(),
        p,
        i: 0,
        j: 0,
    })
}

/// The homothety `c` of centre `(0,0)` and ratio `1/β`, and the stretch
/// `h: (x, y) ↦ (x, βy)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineMapPair<T: Real> {
    pub beta: T,
}

impl<T: Real> AffineMapPair<T> {
    pub fn new(beta: T) -> Self {
        AffineMapPair { beta }
    }

    pub fn contract(&self, [x, y]: [T; 2]) -> [T; 2] {
        [x / self.beta, y / self.beta]
    }

    pub fn stretch(&self, [x, y]: [T; 2]) -> [T; 2] {
        [x, self.beta * y]
    }

    /// `h^j(c^i(point))`, computed in closed form as `(x β^{-i}, y β^{j-i})`.
    pub fn apply(&self, i: usize, j: usize, [x, y]: [T; 2]) -> [T; 2] {
        let down = self.beta.powi(-(i as i32));
        [x * down, y * self.beta.powi(j as i32 - i as i32)]
    }
}

/// A finite family of segments with the truncation parameters that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct SegmentSet<T: Real> {
    pub segments: Vec<Segment<T>>,
    /// Longest word used for the base family.
    pub maxlen: usize,
    /// Largest `i` in the maps `h^j ∘ c^i` applied.
    pub iterations: usize,
}

#[derive(Serialize)]
struct SegmentRecord {
    u: String,
    v: String,
    p: usize,
    ax: f64,
    ay: f64,
    bx: f64,
    by: f64,
    i: usize,
    j: usize,
}

impl<T: Real> SegmentSet<T> {
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Segment<T>> {
        self.segments.iter()
    }

    /// Positive-length pieces with `x ≥ x0`, sorted for comparison.
    pub fn clipped(&self, x0: T, tol: T) -> Vec<[T; 4]> {
        let mut pieces: Vec<[T; 4]> = self
            .segments
            .iter()
            .filter_map(|s| s.clip_x_at_least(x0, tol))
            .collect();
        pieces.sort_by(|p, q| {
            p.iter()
                .zip(q)
                .map(|(a, b)| a.partial_cmp(b).unwrap())
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        pieces
    }

    /// SVG 1.1, viewBox `0 0 1 1`; `y` grows downward so row 0 (ε) is at the
    /// top, as in the bitmaps of the square sets.
    pub fn write_svg<W: Write>(&self, stroke_width: f64, mut out: W) -> Result<()> {
        writeln!(out, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#)?;
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 1 1" width="1000" height="1000">"#
        )?;
        writeln!(
            out,
            "<desc>maxlen={} iterations={} segments={}</desc>",
            self.maxlen,
            self.iterations,
            self.len()
        )?;
        writeln!(out, r#"<rect x="0" y="0" width="1" height="1" fill="white"/>"#)?;
        // identity: SVG's native y axis already points down, matching the bitmaps
        writeln!(
            out,
            r#"<g transform="matrix(1 0 0 1 0 0)" stroke="black" stroke-width="{stroke_width}" stroke-linecap="round" fill="none">"#
        )?;
        for s in &self.segments {
            writeln!(
                out,
                r#"<line x1="{:.9}" y1="{:.9}" x2="{:.9}" y2="{:.9}"/>"#,
                s.a[0].to_f64().unwrap(),
                s.a[1].to_f64().unwrap(),
                s.b[0].to_f64().unwrap(),
                s.b[1].to_f64().unwrap()
            )?;
        }
        writeln!(out, "</g>")?;
        writeln!(out, "</svg>")?;
        Ok(())
    }

    /// JSON array of `{u, v, p, ax, ay, bx, by, i, j}`; ε is `""`.
    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        let records: Vec<SegmentRecord> = self
            .segments
            .iter()
            .map(|s| SegmentRecord {
                u: s.u.to_plain(),
                v: s.v.to_plain(),
                p: s.p,
                ax: s.a[0].to_f64().unwrap(),
                ay: s.a[1].to_f64().unwrap(),
                bx: s.b[0].to_f64().unwrap(),
                by: s.b[1].to_f64().unwrap(),
                i: s.i,
                j: s.j,
            })
            .collect();
        serde_json::to_writer_pretty(out, &records).map_err(|e| Error::Io(e.into()))
    }
}

/// Segments of every `(⋆)_r` pair with `|u| ≤ maxlen`: a finite
/// under-approximation of `𝒜_0`, whose closure may contain more.
pub fn a0_approx<T: Real>(sys: &NumerationSystem<T>, maxlen: usize, residue: ResidueSpec) -> Result<SegmentSet<T>> {
    let segments = star_pairs(sys, maxlen, residue)?
        .iter()
        .map(|(u, v)| segment_for(sys, u, v))
        .collect::<Result<_>>()?;
    Ok(SegmentSet {
        segments,
        maxlen,
        iterations: 0,
    })
}

/// `⋃_{0 ≤ j ≤ i ≤ n} h^j(c^i(a0))`, ordered by `(i, j)` then by the order of `a0`.
pub fn an_approx<T: Real>(a0: &SegmentSet<T>, n: usize, sys: &NumerationSystem<T>) -> SegmentSet<T> {
    let maps = AffineMapPair::new(sys.beta());
    let mut segments = Vec::with_capacity(a0.len() * (n + 1) * (n + 2) / 2);
    for i in 0..=n {
        for j in 0..=i {
            segments.extend(a0.segments.iter().map(|s| Segment {
                a: maps.apply(i, j, s.a),
                b: maps.apply(i, j, s.b),
                i: s.i + i,
                j: s.j + j,
                ..s.clone()
            }));
        }
    }
    SegmentSet {
        segments,
        maxlen: a0.maxlen,
        iterations: a0.iterations + n,
    }
}

/// Writes the set as an SVG file.
pub fn render_segments<T: Real>(set: &SegmentSet<T>, path: &Path, stroke_width: f64) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    set.write_svg(stroke_width, &mut out)?;
    out.flush()?;
    Ok(())
}
