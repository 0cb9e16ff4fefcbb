//! Reference divergences for side-by-side comparison with DLITE.
//!
//! All logarithms are natural (nats).

use crate::distributions::{align, Distribution};
use crate::{Error, Result, Scalar};

/// Kullback-Leibler divergence `KL(p || q) = sum p ln(p / q)`.
///
/// Outcomes with `p = 0` contribute nothing. An outcome with `p > 0` and
/// `q = 0` makes the divergence infinite; that is reported as
/// [`Error::KlUndefined`] rather than returned as `inf`. Smooth `q` first to
/// get a finite value.
pub fn kl<T: Scalar>(p: &Distribution<T>, q: &Distribution<T>) -> Result<T> {
    let (p, q) = align(p, q);
    let mut total = T::zero();
    for ((label, pm), qm) in p.iter().zip(q.masses().iter().copied()) {
        if pm == T::zero() {
            continue;
        }
        if qm == T::zero() {
            return Err(Error::KlUndefined {
                outcome: label.to_string(),
            });
        }
        total = total + pm * (pm / qm).ln();
    }
    // Gibbs: any negative residue is rounding.
    Ok(total.max(T::zero()))
}

/// Jensen-Shannon divergence against the midpoint mixture; in `[0, ln 2]`.
pub fn jsd<T: Scalar>(p: &Distribution<T>, q: &Distribution<T>) -> Result<T> {
    let (p, q) = align(p, q);
    let mut total = T::zero();
    for (&pm, &qm) in p.masses().iter().zip(q.masses()) {
        // Fixed operand order keeps the result bit-symmetric.
        let (a, b) = if pm >= qm { (pm, qm) } else { (qm, pm) };
        let m = (a + b) * T::half();
        let mut term = T::zero();
        if a > T::zero() {
            term = term + a * (a / m).ln();
        }
        if b > T::zero() {
            term = term + b * (b / m).ln();
        }
        total = total + term;
    }
    Ok((total * T::half()).max(T::zero()))
}

/// Total variation distance `½ sum |p - q|`.
pub fn tv<T: Scalar>(p: &Distribution<T>, q: &Distribution<T>) -> Result<T> {
    let (p, q) = align(p, q);
    let s: T = p
        .masses()
        .iter()
        .zip(q.masses())
        .map(|(&a, &b)| (a - b).abs())
        .sum();
    Ok(s * T::half())
}
