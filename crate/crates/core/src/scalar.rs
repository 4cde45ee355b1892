use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar used for β, base-β values and geometry: `f32` or `f64`.
pub trait Real: Float + FromPrimitive + Debug + Display + std::fmt::LowerExp + Default + Send + Sync + 'static {
    /// Lossy conversion from `f64` constants.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Lossy conversion from exact counts.
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count representable")
    }

    /// Default residual tolerance for root finding at this precision.
    fn default_tolerance() -> Self;
}

impl Real for f32 {
    fn default_tolerance() -> Self {
        1e-6
    }
}

impl Real for f64 {
    fn default_tolerance() -> Self {
        1e-12
    }
}
