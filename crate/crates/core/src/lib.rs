//! Entropic difference between finite probability distributions.
//!
//! The central quantity is DLITE: the least-information measure LIT minus its
//! entropy discount. Per outcome, with `x = max(p, q)` and `c = min(p, q)`,
//!
//! | Quantity | Per-outcome term |
//! |----------|------------------|
//! | [`lit`]     | `g = |x(1 - ln x) - c(1 - ln c)|` |
//! | [`delta_h`] | `delta = |x²(1 - 2 ln x) - c²(1 - 2 ln c)| / (2(x + c))` |
//! | [`dlite`]   | `dl = g - delta` |
//!
//! DLITE is symmetric, non-negative, zero only on identical distributions,
//! bounded by total variation (and hence by 1), and its cube root
//! ([`dlite_cbrt`]) satisfies the triangle inequality.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases at the crate root cover the common case. The [`proofcheck`] module
//! holds independent `f64` oracles (quadrature, finite differences, seeded
//! simplex sampling) that check the analytic properties numerically.
//!
//! ```
//! use dlite_core::{dlite, Distribution64};
//!
//! let p = Distribution64::new(["a", "b"], [1.0, 0.0]).unwrap();
//! let q = Distribution64::new(["a", "b"], [0.0, 1.0]).unwrap();
//! assert_eq!(dlite(&p, &q).unwrap().total, 1.0);
//! ```

pub mod baselines;
pub mod distributions;
mod error;
pub mod io;
pub mod matrix;
pub mod measure;
pub mod proofcheck;
mod scalar;

pub use baselines::{jsd, kl, tv};
pub use distributions::{align, Distribution, NamedDistribution, Probability};
pub use error::{Error, Result};
pub use matrix::{distance_matrix, measure_value, DistanceMatrix, MeasureKind};
pub use measure::{
    delta_h, delta_h_term, dl_kernel, dl_term, dlite, dlite_cbrt, g_term, lit, phi, psi, terms,
    MeasureResult, TermBreakdown,
};
pub use scalar::Scalar;

pub type Probability64 = Probability<f64>;
pub type Distribution64 = Distribution<f64>;
pub type NamedDistribution64 = NamedDistribution<f64>;
pub type MeasureResult64 = MeasureResult<f64>;
pub type TermBreakdown64 = TermBreakdown<f64>;
pub type DistanceMatrix64 = DistanceMatrix<f64>;

pub type Distribution32 = Distribution<f32>;
pub type MeasureResult32 = MeasureResult<f32>;
