use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error in expansion `{text}`: {reason}")]
    Syntax { text: String, reason: String },
    #[error("digit {digit} out of range: {reason}")]
    DigitOutOfRange { digit: u64, reason: String },
    #[error("the preperiod of an expansion must not be empty")]
    EmptyPreperiod,
    #[error("invalid expansion: {0}")]
    InvalidSpec(String),
    #[error("expansion is not admissible: its shift by {shift} is lexicographically greater")]
    NotAdmissible { shift: usize },
    #[error("root finding did not converge within {0} iterations")]
    NoConvergence(usize),
    #[error("integer overflow while computing {0}")]
    Overflow(String),
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("residue {r} is not in 1..{q}")]
    InvalidResidue { q: u64, r: u64 },
    #[error("word `{0}` is not a path label of the automaton")]
    NotInLanguage(String),
    #[error("digit {digit} is outside the alphabet 0..={max}")]
    OutsideAlphabet { digit: u64, max: u64 },
    #[error("zero-padding search for `{u}`, `{v}` exceeded {cap} steps")]
    PaddingCapExceeded { u: String, v: String, cap: usize },
    #[error("brute-force enumeration limited to words of length {limit}, got {len}")]
    BruteForceGuard { len: usize, limit: usize },
    #[error("sampling spacing {spacing} is coarser than the cell size {cell}")]
    SpacingTooCoarse { spacing: f64, cell: f64 },
    #[error("Hausdorff distance of an empty point cloud")]
    EmptyCloud,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures caused by the file system rather than by the input.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_))
    }
}
