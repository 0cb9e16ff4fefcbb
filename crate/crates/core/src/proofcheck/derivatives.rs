//! Finite-difference checks of the derivative argument for non-negativity
//! and of the concavity of the cube-rooted term.
//!
//! Throughout, `x` is the larger probability and `c` the smaller; derivatives
//! are taken in `x` with `c` held fixed.

use serde_json::json;

use super::finite_diff::{first_derivative, second_derivative, Stencil};
use super::report::{Extreme, PropertyReport};
use super::Tolerances;
use crate::measure::dl_term;

/// Step for first differences.
pub const FIRST_STEP: f64 = 1e-5;
/// Step for second differences.
pub const SECOND_STEP: f64 = 1e-4;

/// Uniform grid `{ i / n : 1 <= i <= n }` on each axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grid {
    pub n: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Self { n: 100 }
    }
}

impl Grid {
    /// All `(x, c)` with `0 < c <= x <= 1`.
    pub fn upper_triangle(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = self.n;
        (1..=n).flat_map(move |i| (i..=n).map(move |j| (j as f64 / n as f64, i as f64 / n as f64)))
    }
}

/// Two sign readings of the printed first derivative of the DLITE term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivativeSign {
    /// `-(2c² ln x - x² - 2c² ln c + c²) / (2(x+c)²)`
    LeadingMinus,
    /// `(2c² ln x - x² - 2c² ln c + c²) / (2(x+c)²)`
    NoMinus,
}

impl DerivativeSign {
    pub fn name(self) -> &'static str {
        match self {
            DerivativeSign::LeadingMinus => "leading-minus",
            DerivativeSign::NoMinus => "no-minus",
        }
    }

    pub fn eval(self, x: f64, c: f64) -> f64 {
        let inner = 2.0 * c * c * x.ln() - x * x - 2.0 * c * c * c.ln() + c * c;
        let v = inner / (2.0 * (x + c) * (x + c));
        match self {
            DerivativeSign::LeadingMinus => -v,
            DerivativeSign::NoMinus => v,
        }
    }
}

/// The printed second derivative `c(x² + 2cx ln x - 2cx ln c - c²) / (x(x+c)³)`.
pub fn printed_second_derivative(x: f64, c: f64) -> f64 {
    c * (x * x - c * c + 2.0 * c * x * (x / c).ln()) / (x * (x + c).powi(3))
}

fn dl(x: f64, c: f64) -> f64 {
    dl_term(x, c).expect("finite-difference samples stay inside [0, 1]")
}

/// Picks a stencil that stays on the `x >= c` side near the diagonal and
/// inside `[0, 1]` near the top edge.
fn stencil_for(x: f64, c: f64, h: f64, second: bool) -> Stencil {
    if x - c < 10.0 * h {
        if x + Stencil::Forward.reach(second) * h <= 1.0 {
            Stencil::Forward
        } else {
            Stencil::Backward
        }
    } else if x + Stencil::Central.reach(second) * h > 1.0 {
        Stencil::Backward
    } else {
        Stencil::Central
    }
}

// dl(·, c) varies on the scale of x, so the step shrinks for small x.
fn step(base: f64, x: f64) -> f64 {
    base.min(x * base * 10.0)
}

/// Finite-difference first derivative of `dl(·, c)` at `x`.
pub fn fd_first(x: f64, c: f64) -> f64 {
    let h = step(FIRST_STEP, x);
    let s = stencil_for(x, c, h, false);
    first_derivative(|t| dl(t, c), x, h, s)
}

/// Finite-difference second derivative of `dl(·, c)` at `x`.
pub fn fd_second(x: f64, c: f64) -> f64 {
    let h = step(SECOND_STEP, x);
    let s = stencil_for(x, c, h, true);
    second_derivative(|t| dl(t, c), x, h, s)
}

/// Result of the derivative-chain check.
#[derive(Clone, Debug)]
pub struct DerivativeCheck {
    /// The sign reading that matches finite differences, if exactly one does.
    pub matched_sign: Option<DerivativeSign>,
    pub reports: Vec<PropertyReport>,
}

fn rel_err(fd: f64, analytic: f64) -> f64 {
    (fd - analytic).abs() / analytic.abs()
}

/// Checks, on the grid:
/// - which printed sign of `dl'` matches finite differences off the diagonal;
/// - that the printed `dl''` matches finite differences off the diagonal;
/// - that the printed `dl''` is non-negative for `x >= c`;
/// - that `dl`, `dl'`, `dl''` vanish on the diagonal.
pub fn check_theorem1_derivatives(grid: Grid, tol: &Tolerances) -> DerivativeCheck {
    let points: Vec<(f64, f64)> = grid.upper_triangle().collect();
    let interior: Vec<(usize, f64, f64)> = points
        .iter()
        .enumerate()
        .filter(|(_, (x, c))| x > c)
        .map(|(i, &(x, c))| (i, x, c))
        .collect();

    let signs = [DerivativeSign::LeadingMinus, DerivativeSign::NoMinus];
    let mut first_worst: Vec<Extreme<(f64, f64, f64, f64)>> = Vec::new();
    for sign in signs {
        let worst = interior
            .iter()
            .map(|&(i, x, c)| {
                let fd = fd_first(x, c);
                let a = sign.eval(x, c);
                Extreme::new(rel_err(fd, a), i, (x, c, fd, a))
            })
            .reduce(Extreme::max)
            .expect("grid has interior points");
        first_worst.push(worst);
    }
    let matching: Vec<usize> = (0..2)
        .filter(|&k| first_worst[k].value <= tol.derivative)
        .collect();
    let matched_sign = (matching.len() == 1).then(|| signs[matching[0]]);
    let shown = matching.first().copied().unwrap_or(0);
    let w = &first_worst[shown];
    let first_report = PropertyReport {
        property_name: "derivative.first_sign".into(),
        samples: interior.len() as u64,
        worst_violation: w.value,
        worst_case_inputs: json!({
            "matched_sign": matched_sign.map(DerivativeSign::name),
            "x": w.inputs.0,
            "c": w.inputs.1,
            "finite_difference": w.inputs.2,
            "printed": w.inputs.3,
            "worst_relative_error": {
                signs[0].name(): first_worst[0].value,
                signs[1].name(): first_worst[1].value,
            },
        }),
        passed: matched_sign.is_some(),
        seed: 0,
    };

    let second = interior
        .iter()
        .map(|&(i, x, c)| {
            let fd = fd_second(x, c);
            let a = printed_second_derivative(x, c);
            Extreme::new(rel_err(fd, a), i, (x, c, fd, a))
        })
        .reduce(Extreme::max)
        .expect("grid has interior points");
    let second_report = PropertyReport::equality(
        "derivative.second_formula",
        interior.len() as u64,
        second.value,
        json!({"x": second.inputs.0, "c": second.inputs.1,
               "finite_difference": second.inputs.2, "printed": second.inputs.3}),
        tol.derivative,
        0,
    );

    let curvature = points
        .iter()
        .enumerate()
        .map(|(i, &(x, c))| Extreme::new(printed_second_derivative(x, c), i, (x, c)))
        .reduce(Extreme::min)
        .expect("grid is non-empty");
    let curvature_report = PropertyReport::inequality(
        "derivative.second_nonnegative",
        points.len() as u64,
        curvature.value,
        json!({"x": curvature.inputs.0, "c": curvature.inputs.1}),
        tol.curvature_floor,
        0,
    );

    let diagonal: Vec<(usize, f64)> = points
        .iter()
        .enumerate()
        .filter(|(_, (x, c))| x == c)
        .map(|(i, &(_, c))| (i, c))
        .collect();
    let diag = diagonal
        .iter()
        .map(|&(i, c)| {
            let (v, d1, d2) = (dl(c, c), fd_first(c, c), fd_second(c, c));
            Extreme::new(v.abs().max(d1.abs()).max(d2.abs()), i, (c, v, d1, d2))
        })
        .reduce(Extreme::max)
        .expect("grid has diagonal points");
    let diagonal_report = PropertyReport::equality(
        "derivative.diagonal_zero",
        diagonal.len() as u64,
        diag.value,
        json!({"c": diag.inputs.0, "dl": diag.inputs.1,
               "first_derivative": diag.inputs.2, "second_derivative": diag.inputs.3}),
        tol.derivative_zero,
        0,
    );

    DerivativeCheck {
        matched_sign,
        reports: vec![
            first_report,
            second_report,
            curvature_report,
            diagonal_report,
        ],
    }
}

/// Multipliers applied to the term before taking the cube root.
pub const CONCAVITY_MULTIPLIERS: [f64; 3] = [1.0, 2.0, 5.0];

/// `(m · dl(x, c))^(1/3)`.
pub fn cbrt_term(m: f64, x: f64, c: f64) -> f64 {
    (m * dl(x, c)).cbrt()
}

/// Finite-difference second derivative of `x ↦ (m · dl(x, c))^(1/3)`.
///
/// The step shrinks near the diagonal, where the curvature is unbounded, so
/// the stencil never crosses it.
pub fn cbrt_second(m: f64, x: f64, c: f64) -> f64 {
    let h = SECOND_STEP.min((x - c) / 10.0);
    let s = if x + Stencil::Central.reach(true) * h > 1.0 {
        Stencil::Backward
    } else {
        Stencil::Central
    };
    second_derivative(|t| cbrt_term(m, t, c), x, h, s)
}

/// Checks that the cube-rooted term is concave in `x` for `x > c` on the
/// grid, for every multiplier in [`CONCAVITY_MULTIPLIERS`].
pub fn check_theorem2_concavity(grid: Grid, tol: &Tolerances) -> PropertyReport {
    let points: Vec<(f64, f64)> = grid.upper_triangle().filter(|(x, c)| x > c).collect();
    let mut worst: Option<Extreme<(f64, f64, f64, f64)>> = None;
    let mut samples = 0u64;
    for (k, &m) in CONCAVITY_MULTIPLIERS.iter().enumerate() {
        for (i, &(x, c)) in points.iter().enumerate() {
            let d2 = cbrt_second(m, x, c);
            let e = Extreme::new(-d2, k * points.len() + i, (x, c, m, d2));
            worst = Some(match worst {
                Some(w) => w.min(e),
                None => e,
            });
            samples += 1;
        }
    }
    let w = worst.expect("grid has interior points");
    PropertyReport::inequality(
        "concavity.cbrt",
        samples,
        w.value,
        json!({"x": w.inputs.0, "c": w.inputs.1, "m": w.inputs.2, "second_derivative": w.inputs.3}),
        tol.concavity,
        0,
    )
}
