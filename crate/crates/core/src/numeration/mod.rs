//! Expansions of 1 in base β, the Parry automaton, and the canonical
//! Parry–Bertrand numeration system `U_β`.

mod automaton;
mod custom;
mod expansion;
mod system;

pub use automaton::ParryAutomaton;
pub use custom::CustomLinearSystem;
pub use expansion::{
    beta_value, parse_beta_spec, quasi_greedy_expansion, validate_admissibility, BetaExpansionSpec, EventuallyPeriodic,
    BISECTION_ITERATION_CAP,
};
pub use system::NumerationSystem;
