//! Floating-point abstraction shared by every measure in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive};

/// Real scalar the measures are evaluated in (`f32` or `f64`).
///
/// Tolerances that the algorithms depend on are expressed through this trait
/// so that they widen automatically for lower-precision types.
pub trait Scalar:
    Float + FromPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Panics only for values the type cannot hold
    /// at all, which never happens for the constants used in this crate.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }

    /// Allowed deviation of a normalized mass vector from a unit sum.
    #[inline]
    fn sum_tolerance() -> Self {
        Self::lit(1e-9).max(Self::epsilon() * Self::lit(64.0))
    }

    /// Allowed disagreement between `g - delta` and the directly evaluated
    /// per-outcome DLITE term.
    #[inline]
    fn cancellation_slack() -> Self {
        Self::lit(1e-12).max(Self::epsilon() * Self::lit(32.0))
    }

    /// Lossy conversion used for diagnostics.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
