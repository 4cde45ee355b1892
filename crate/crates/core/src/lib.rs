//! Parry–Bertrand numeration systems and the Pascal-like triangles built from
//! binomial coefficients of words.
//!
//! The crate is organised bottom-up:
//!
//! * [`numeration`] parses expansions of 1 in base β, builds the Parry
//!   automaton and the canonical numeration system `U_β`, and converts between
//!   integers and their greedy representations.
//! * [`binomial`] counts scattered-subword occurrences exactly or modulo a
//!   prime, with a Lucas-theorem routine for integer binomials.
//! * [`triangle`] generates blocks of the generalized Pascal triangle and the
//!   normalized square sets coloured by residue class.
//! * [`star`] decides the stability condition on pairs of words and builds the
//!   slope-one segments and their images under the contraction/stretch maps.
//! * [`hausdorff`] samples both families of compact sets and measures their
//!   Hausdorff distance.
//!
//! Real-valued code is generic over [`Real`] (`f32` or `f64`); exact counts are
//! generic over any `num-traits` integer with checked addition. The aliases at
//! the crate root fix the scalar to `f64`, which is what the CLI uses.

pub mod binomial;
pub mod checks;
pub mod error;
pub mod hausdorff;
pub mod numeration;
pub mod scalar;
pub mod star;
pub mod triangle;
pub mod word;

pub use binomial::{
    binom_row, binom_words, binom_words_exact, binom_words_mod, brute_force_count, lucas_binom_mod, ResidueSpec,
};
pub use error::{Error, Result};
pub use numeration::{BetaExpansionSpec, CustomLinearSystem, EventuallyPeriodic, ParryAutomaton};
pub use scalar::Real;
pub use triangle::{BlockMode, SquareSet, TriangleBlock};
pub use word::{Digit, Word};

/// Numeration system with a double-precision β.
pub type NumerationSystem = numeration::NumerationSystem<f64>;
/// Numeration system with a single-precision β.
pub type NumerationSystem32 = numeration::NumerationSystem<f32>;
pub type Segment = star::Segment<f64>;
pub type SegmentSet = star::SegmentSet<f64>;
pub type AffineMapPair = star::AffineMapPair<f64>;
pub type PointCloud = hausdorff::PointCloud<f64>;
pub type HausdorffEstimate = hausdorff::HausdorffEstimate<f64>;
pub type ConvergenceRow = hausdorff::ConvergenceRow<f64>;
