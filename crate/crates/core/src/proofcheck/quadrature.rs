//! Quadrature oracle for the integral definitions of LIT and the entropy
//! discount.
//!
//! The integrals are evaluated with a globally adaptive Simpson rule that
//! always splits the panel with the largest error estimate. `-ln t` is
//! unbounded at the origin, so integration stops at `singularity_guard`
//! and the remaining sliver `[0, guard]` is added from its antiderivative.
//! With the default guard that sliver is below `4e-13`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    /// Panel budget.
    pub subdivisions: usize,
    /// Target for the summed error estimate.
    pub abs_tol: f64,
    /// Lower integration cutoff near 0.
    pub singularity_guard: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            subdivisions: 4096,
            abs_tol: 1e-13,
            singularity_guard: 1e-14,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.subdivisions < 16 {
            return Err(Error::InvalidConfig(format!(
                "quadrature needs at least 16 subdivisions, got {}",
                self.subdivisions
            )));
        }
        if self.abs_tol.is_nan() || self.abs_tol <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "quadrature abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if !(self.singularity_guard > 0.0 && self.singularity_guard < 1e-6) {
            return Err(Error::InvalidConfig(format!(
                "singularity guard must be in (0, 1e-6), got {}",
                self.singularity_guard
            )));
        }
        Ok(())
    }
}

struct Panel {
    a: f64,
    b: f64,
    // f at a, a + w/4, a + w/2, a + 3w/4, b
    f: [f64; 5],
    value: f64,
    error: f64,
}

impl Panel {
    fn new(a: f64, b: f64, f: [f64; 5]) -> Self {
        let w = b - a;
        let whole = w / 6.0 * (f[0] + 4.0 * f[2] + f[4]);
        let halves = w / 12.0 * (f[0] + 4.0 * f[1] + 2.0 * f[2] + 4.0 * f[3] + f[4]);
        Self {
            a,
            b,
            f,
            value: halves + (halves - whole) / 15.0,
            error: (halves - whole).abs() / 15.0,
        }
    }

    fn eval(a: f64, b: f64, func: &impl Fn(f64) -> f64) -> Self {
        let w = b - a;
        let f = [
            func(a),
            func(a + 0.25 * w),
            func(a + 0.5 * w),
            func(a + 0.75 * w),
            func(b),
        ];
        Self::new(a, b, f)
    }

    fn split(&self, func: &impl Fn(f64) -> f64) -> Option<(Self, Self)> {
        let m = 0.5 * (self.a + self.b);
        if !(m > self.a && m < self.b) {
            return None;
        }
        let q1 = 0.5 * (self.a + m);
        let q3 = 0.5 * (m + self.b);
        let left = [
            self.f[0],
            func(0.5 * (self.a + q1)),
            self.f[1],
            func(0.5 * (q1 + m)),
            self.f[2],
        ];
        let right = [
            self.f[2],
            func(0.5 * (m + q3)),
            self.f[3],
            func(0.5 * (q3 + self.b)),
            self.f[4],
        ];
        Some((Self::new(self.a, m, left), Self::new(m, self.b, right)))
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Integrates `func` over `[a, b]` (`a <= b`) to a summed error estimate of
/// at most `cfg.abs_tol`.
pub fn adaptive_simpson(
    func: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let mut heap = BinaryHeap::new();
    let first = Panel::eval(a, b, &func);
    let mut error = first.error;
    heap.push(first);

    while error > cfg.abs_tol {
        if heap.len() >= cfg.subdivisions {
            return Err(Error::QuadratureNonConvergence {
                a,
                b,
                panels: heap.len(),
                estimate: error,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let Some((l, r)) = worst.split(&func) else {
            return Err(Error::QuadratureNonConvergence {
                a,
                b,
                panels: heap.len() + 1,
                estimate: error,
            });
        };
        heap.push(l);
        heap.push(r);
        // Re-sum instead of updating incrementally so the estimate cannot drift.
        error = heap.iter().map(|p| p.error).sum();
        if !error.is_finite() {
            return Err(Error::QuadratureNonConvergence {
                a,
                b,
                panels: heap.len(),
                estimate: error,
            });
        }
    }

    let mut panels = heap.into_vec();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    Ok(panels.iter().map(|p| p.value).sum())
}

fn neg_log(t: f64) -> f64 {
    -t.ln()
}

fn neg_t_log(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        -t * t.ln()
    }
}

/// Antiderivative of `-ln t` vanishing at 0.
fn neg_log_primitive(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t - t * t.ln()
    }
}

/// Antiderivative of `-t ln t` vanishing at 0.
fn neg_t_log_primitive(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t * t * (0.25 - 0.5 * t.ln())
    }
}

/// `∫_lo^hi f` for `0 <= lo <= hi`, numerically above the guard and
/// analytically below it.
fn guarded(
    func: impl Fn(f64) -> f64,
    primitive: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let guard = cfg.singularity_guard;
    if hi <= guard {
        return Ok(primitive(hi) - primitive(lo));
    }
    let tail = if lo < guard {
        primitive(guard) - primitive(lo)
    } else {
        0.0
    };
    Ok(adaptive_simpson(func, lo.max(guard), hi, cfg)? + tail)
}

fn check_unit(p: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(Error::Domain(p))
    }
}

fn ordered(p: f64, q: f64) -> Result<(f64, f64)> {
    let (p, q) = (check_unit(p)?, check_unit(q)?);
    Ok(if p >= q { (p, q) } else { (q, p) })
}

/// `|∫_p^q -ln t dt|` by quadrature; the oracle for the LIT term.
pub fn lit_by_quadrature(p: f64, q: f64, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    let (x, c) = ordered(p, q)?;
    if x == c {
        return Ok(0.0);
    }
    guarded(neg_log, neg_log_primitive, c, x, cfg)
}

/// `|p - q| · ∫ -t ln t dt / ∫ t dt` over `[min, max]` by quadrature; the
/// oracle for the entropy discount term. Zero when `p == q`.
pub fn discount_by_quadrature(p: f64, q: f64, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    let (x, c) = ordered(p, q)?;
    if x == c {
        return Ok(0.0);
    }
    let numerator = guarded(neg_t_log, neg_t_log_primitive, c, x, cfg)?;
    let denominator = adaptive_simpson(|t| t, c, x, cfg)?;
    Ok((x - c) * numerator / denominator)
}

/// The discount as the absolute change `|p - q|` times the mean of
/// `ln(1/t)` under the density proportional to `t` on `[min, max]`.
///
/// The mean is computed through the substitution `u = t²`, which turns it
/// into half the plain average of `-ln u` over `[min², max²]`. That is a
/// different integral from the one in [`discount_by_quadrature`], so the two
/// oracles check each other.
pub fn discount_by_weighted_mean(p: f64, q: f64, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    let (x, c) = ordered(p, q)?;
    if x == c {
        return Ok(0.0);
    }
    let (lo, hi) = (c * c, x * x);
    if hi == lo {
        // Squares collided; the mean collapses to -ln x.
        return Ok((x - c) * -x.ln());
    }
    let mean = 0.5 * guarded(neg_log, neg_log_primitive, lo, hi, cfg)? / (hi - lo);
    Ok((x - c) * mean)
}
