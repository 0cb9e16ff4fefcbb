//! LIT, entropy discount, and DLITE in closed form.
//!
//! All per-outcome terms order their operands as `x = max(p, q)`,
//! `c = min(p, q)` before evaluating anything, so every term is symmetric
//! bit-for-bit. Zero masses use the continuous limits `0 ln 0 = 0`.
//!
//! The DLITE term is not evaluated as `g - delta`: for `p` close to `q` it is
//! cubic in `p - q` while `g` and `delta` are linear, so the subtraction
//! would cancel every significant digit. With `t = ln(x / c)` the same
//! quantity is
//!
//! ```text
//! dl(x, c) = x c (sinh t - t) / (x + c)        (c > 0)
//! dl(x, 0) = x / 2
//! ```
//!
//! which is evaluated directly. `g - delta` is still computed and checked
//! against it.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::distributions::{align, Distribution, Probability};
use crate::{Error, Result, Scalar};

/// Per-outcome LIT term, entropy discount, and DLITE term.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TermBreakdown<T> {
    pub g: T,
    pub delta: T,
    pub dl: T,
}

/// A distribution-level measure with its per-outcome terms.
///
/// `total` is the sum of the field the measure is named after: `g` for
/// [`lit`], `delta` for [`delta_h`], `dl` for [`dlite`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureResult<T> {
    pub total: T,
    pub per_outcome: BTreeMap<String, TermBreakdown<T>>,
}

#[inline]
fn ordered<T: Scalar>(p: T, q: T) -> (T, T) {
    if p >= q {
        (p, q)
    } else {
        (q, p)
    }
}

#[inline]
fn phi_raw<T: Scalar>(p: T) -> T {
    if p == T::zero() {
        T::zero()
    } else {
        p * (T::one() - p.ln())
    }
}

#[inline]
fn psi_raw<T: Scalar>(p: T) -> T {
    if p == T::zero() {
        T::zero()
    } else {
        p * p * (T::one() - T::two() * p.ln())
    }
}

/// `p (1 - ln p)`, the antiderivative of `-ln p` shifted so that `phi(0) = 0`.
pub fn phi<T: Scalar>(p: T) -> Result<T> {
    Ok(phi_raw(Probability::new(p)?.get()))
}

/// `p² (1 - 2 ln p)`, with `psi(0) = 0`.
pub fn psi<T: Scalar>(p: T) -> Result<T> {
    Ok(psi_raw(Probability::new(p)?.get()))
}

#[inline]
fn g_raw<T: Scalar>(x: T, c: T) -> T {
    (phi_raw(x) - phi_raw(c)).abs()
}

#[inline]
fn delta_raw<T: Scalar>(x: T, c: T) -> T {
    let s = x + c;
    if s == T::zero() {
        T::zero()
    } else {
        (psi_raw(x) - psi_raw(c)).abs() / (T::two() * s)
    }
}

/// Per-outcome LIT term `|phi(p) - phi(q)|`.
pub fn g_term<T: Scalar>(p: T, q: T) -> Result<T> {
    let (x, c) = ordered(Probability::new(p)?.get(), Probability::new(q)?.get());
    Ok(g_raw(x, c))
}

/// Per-outcome entropy discount `|psi(p) - psi(q)| / (2 (p + q))`, zero when
/// both masses are zero.
pub fn delta_h_term<T: Scalar>(p: T, q: T) -> Result<T> {
    let (x, c) = ordered(Probability::new(p)?.get(), Probability::new(q)?.get());
    Ok(delta_raw(x, c))
}

/// `sinh t - t` for `t >= 0`, by its Taylor series below 1.
fn sinh_minus_identity<T: Scalar>(t: T) -> T {
    if t >= T::one() {
        return t.sinh() - t;
    }
    let t2 = t * t;
    let mut term = t * t2 / T::lit(6.0);
    let mut sum = term;
    let mut k = 3.0;
    while term > sum * T::epsilon() {
        term = term * t2 / T::lit((k + 1.0) * (k + 2.0));
        sum = sum + term;
        k += 2.0;
    }
    sum
}

/// DLITE term for any pair of non-negative reals, without the `[0, 1]`
/// domain check.
///
/// The formula stays meaningful outside the unit interval (it is
/// positively homogeneous of degree one), which the finite-difference and
/// scaling checks rely on. Inputs must be finite and non-negative.
pub fn dl_kernel<T: Scalar>(a: T, b: T) -> T {
    let (x, c) = ordered(a, b);
    if c == T::zero() {
        return x * T::half();
    }
    if x == c {
        return T::zero();
    }
    let r = (x - c) / c;
    let t = if r.is_finite() {
        r.ln_1p()
    } else {
        x.ln() - c.ln()
    };
    if t < T::one() {
        x * c * sinh_minus_identity(t) / (x + c)
    } else {
        ((x - c) * (x + c) * T::half() - x * c * t) / (x + c)
    }
}

/// Evaluates all three per-outcome terms and cross-checks them.
///
/// Fails with [`Error::Inconsistent`] when `g - delta` is materially negative
/// or disagrees with the direct DLITE evaluation.
pub fn terms<T: Scalar>(p: T, q: T) -> Result<TermBreakdown<T>> {
    let (x, c) = ordered(Probability::new(p)?.get(), Probability::new(q)?.get());
    let g = g_raw(x, c);
    let delta = delta_raw(x, c);
    let dl = dl_kernel(x, c);

    let slack = T::cancellation_slack();
    let diff = g - delta;
    if diff < -slack || (diff - dl).abs() > slack {
        return Err(Error::Inconsistent {
            p: p.as_f64(),
            q: q.as_f64(),
            lit_minus_discount: diff.as_f64(),
            direct: dl.as_f64(),
        });
    }
    Ok(TermBreakdown { g, delta, dl })
}

/// Per-outcome DLITE term `g - delta`.
pub fn dl_term<T: Scalar>(p: T, q: T) -> Result<T> {
    terms(p, q).map(|t| t.dl)
}

fn breakdown<T: Scalar>(
    p: &Distribution<T>,
    q: &Distribution<T>,
    pick: impl Fn(&TermBreakdown<T>) -> T,
) -> Result<MeasureResult<T>> {
    let (p, q) = align(p, q);
    let mut per_outcome = BTreeMap::new();
    let mut total = T::zero();
    for ((label, pm), qm) in p.iter().zip(q.masses().iter().copied()) {
        let t = terms(pm, qm)?;
        total = total + pick(&t);
        per_outcome.insert(label.to_string(), t);
    }
    Ok(MeasureResult { total, per_outcome })
}

/// LIT: sum of per-outcome `g` terms.
pub fn lit<T: Scalar>(p: &Distribution<T>, q: &Distribution<T>) -> Result<MeasureResult<T>> {
    breakdown(p, q, |t| t.g)
}

/// Entropy discount: sum of per-outcome `delta` terms.
pub fn delta_h<T: Scalar>(p: &Distribution<T>, q: &Distribution<T>) -> Result<MeasureResult<T>> {
    breakdown(p, q, |t| t.delta)
}

/// DLITE: LIT minus its entropy discount, as a sum of per-outcome terms.
pub fn dlite<T: Scalar>(p: &Distribution<T>, q: &Distribution<T>) -> Result<MeasureResult<T>> {
    breakdown(p, q, |t| t.dl)
}

/// Cube root of the DLITE total; the form that satisfies the triangle
/// inequality.
pub fn dlite_cbrt<T: Scalar>(p: &Distribution<T>, q: &Distribution<T>) -> Result<T> {
    dlite(p, q).map(|r| r.total.cbrt())
}
