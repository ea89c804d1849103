//! Scalar abstraction so the evidence math runs on `f32` or `f64`.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar used for masses and membership degrees.
///
/// The associated tolerances scale with the precision of the type:
/// mass maps must sum to one within `MASS_TOL`, and entries smaller
/// than `ZERO_EPS` are treated as zero when comparing mass functions.
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// Tolerance for the "masses sum to one" invariant.
    const MASS_TOL: Self;
    /// Threshold below which a stored entry counts as zero in comparisons.
    const ZERO_EPS: Self;

    /// Lossless-enough conversion from `f64` literals (tolerances, floors).
    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("finite f64 converts to any Real")
    }
}

impl Real for f32 {
    const MASS_TOL: Self = 1e-5;
    const ZERO_EPS: Self = 1e-7;
}

impl Real for f64 {
    const MASS_TOL: Self = 1e-9;
    const ZERO_EPS: Self = 1e-12;
}
