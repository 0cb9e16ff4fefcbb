//! Independent numerical checks of the analytic properties of DLITE.
//!
//! | Check | Oracle |
//! |-------|--------|
//! | [`check_oracle_agreement`] | adaptive quadrature of the integral definitions |
//! | [`check_theorem1_derivatives`] | finite differences vs. printed `dl'`, `dl''` |
//! | [`check_theorem2_concavity`] | finite differences of `(m·dl)^(1/3)` |
//! | [`check_metric_axioms`] | seeded Dirichlet(1) triples |
//! | [`check_scaling_lemma`] | seeded `(p, q, x)` |
//! | [`search_supremum`] | random search + coordinate ascent |
//! | [`check_kl_contrast`] | KL on a vanishing-support family |
//!
//! Every randomized check is a pure function of its seed, sample count and
//! dimensions; reports are byte-identical across runs regardless of thread
//! count.

mod axioms;
mod derivatives;
pub mod finite_diff;
mod oracle;
pub mod quadrature;
mod report;
pub mod sampling;

pub use axioms::{
    check_kl_contrast, check_metric_axioms, check_scaling_lemma, check_triple, coordinate_ascent,
    search_supremum, DIM_RANGE, IDENTITY_TV_THRESHOLD,
};
pub use derivatives::{
    cbrt_second, cbrt_term, check_theorem1_derivatives, check_theorem2_concavity, fd_first,
    fd_second, printed_second_derivative, DerivativeCheck, DerivativeSign, Grid,
    CONCAVITY_MULTIPLIERS, FIRST_STEP, SECOND_STEP,
};
pub use oracle::{check_oracle_agreement, oracle_pair, BOUNDARY};
pub use quadrature::{
    discount_by_quadrature, discount_by_weighted_mean, lit_by_quadrature, QuadratureConfig,
};
pub use report::PropertyReport;

use crate::{Error, Result};

/// Pass thresholds for every check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Closed form vs. quadrature, interior pairs.
    pub oracle: f64,
    /// Closed form vs. quadrature, pairs with a coordinate near 0.
    pub oracle_boundary: f64,
    /// Slack allowed in the cube-root triangle inequality.
    pub triangle: f64,
    /// Relative error of the scaling identity.
    pub scaling: f64,
    /// Relative error of finite differences vs. printed derivatives.
    pub derivative: f64,
    /// Absolute size of `dl`, `dl'`, `dl''` on the diagonal.
    pub derivative_zero: f64,
    /// Lower bound on the printed `dl''`.
    pub curvature_floor: f64,
    /// Upper bound on the second derivative of the cube-rooted term.
    pub concavity: f64,
    /// Allowed excess of DLITE over 1.
    pub supremum: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            oracle: 1e-9,
            oracle_boundary: 1e-7,
            triangle: 1e-10,
            scaling: 1e-10,
            derivative: 1e-5,
            derivative_zero: 1e-7,
            curvature_floor: 1e-10,
            concavity: 1e-8,
            supremum: 1e-12,
        }
    }
}

impl Tolerances {
    pub const KEYS: [&'static str; 9] = [
        "oracle",
        "oracle-boundary",
        "triangle",
        "scaling",
        "derivative",
        "derivative-zero",
        "curvature-floor",
        "concavity",
        "supremum",
    ];

    /// Overrides one tolerance by its key (see [`Tolerances::KEYS`]).
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !(value >= 0.0 && value.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "tolerance {key} must be finite and non-negative"
            )));
        }
        let slot = match key {
            "oracle" => &mut self.oracle,
            "oracle-boundary" => &mut self.oracle_boundary,
            "triangle" => &mut self.triangle,
            "scaling" => &mut self.scaling,
            "derivative" => &mut self.derivative,
            "derivative-zero" => &mut self.derivative_zero,
            "curvature-floor" => &mut self.curvature_floor,
            "concavity" => &mut self.concavity,
            "supremum" => &mut self.supremum,
            _ => {
                return Err(Error::InvalidConfig(format!(
                    "unknown tolerance `{key}` (expected one of {})",
                    Self::KEYS.join(", ")
                )))
            }
        };
        *slot = value;
        Ok(())
    }
}

/// Settings for [`run_all`].
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Samples per dimension for the axiom and supremum checks, and total
    /// samples for the scaling check.
    pub samples: usize,
    pub dims: Vec<usize>,
    pub tolerances: Tolerances,
    pub grid: Grid,
    pub oracle_pairs: usize,
    pub oracle_boundary_pairs: usize,
    pub quadrature: QuadratureConfig,
    pub contrast_epsilons: Vec<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            samples: 10_000,
            dims: vec![2, 3, 4, 8],
            tolerances: Tolerances::default(),
            grid: Grid::default(),
            oracle_pairs: 2_000,
            oracle_boundary_pairs: 100,
            quadrature: QuadratureConfig::default(),
            contrast_epsilons: vec![1e-3, 1e-6, 1e-9],
        }
    }
}

/// Runs every check and returns the reports in a fixed order.
pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<PropertyReport>> {
    axioms::validate_sampling(cfg.samples, &cfg.dims)?;
    if cfg.grid.n < 2 {
        return Err(Error::InvalidConfig("derivative grid needs n >= 2".into()));
    }
    let tol = &cfg.tolerances;
    let mut out = check_oracle_agreement(
        cfg.oracle_pairs,
        cfg.oracle_boundary_pairs,
        cfg.seed,
        &cfg.quadrature,
        tol,
    )?;
    out.extend(check_theorem1_derivatives(cfg.grid, tol).reports);
    out.push(check_theorem2_concavity(cfg.grid, tol));
    out.extend(check_metric_axioms(cfg.samples, &cfg.dims, cfg.seed, tol)?);
    out.push(check_scaling_lemma(cfg.samples, cfg.seed, tol)?);
    out.push(search_supremum(cfg.samples, &cfg.dims, cfg.seed, tol)?);
    out.push(check_kl_contrast(&cfg.contrast_epsilons));
    Ok(out)
}
