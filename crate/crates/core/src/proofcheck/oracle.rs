//! Agreement between the closed forms and the quadrature oracles.

use rand::Rng;
use rayon::prelude::*;
use serde_json::json;

use super::quadrature::{
    discount_by_quadrature, discount_by_weighted_mean, lit_by_quadrature, QuadratureConfig,
};
use super::report::{Extreme, PropertyReport};
use super::sampling::{sample_rng, TAG_ORACLE};
use super::Tolerances;
use crate::measure::{delta_h_term, g_term};
use crate::Result;

/// Pairs with either coordinate below this are held to the boundary
/// tolerance.
pub const BOUNDARY: f64 = 1e-6;

/// The `index`-th sampled pair. The first `n_boundary` pairs have one
/// coordinate exactly zero (alternating sides); the rest are uniform on
/// `[0, 1]²`.
pub fn oracle_pair(seed: u64, index: usize, n_boundary: usize) -> (f64, f64) {
    let mut rng = sample_rng(seed, TAG_ORACLE, 0, index);
    let u: f64 = rng.random();
    if index < n_boundary {
        if index.is_multiple_of(2) {
            (0.0, u)
        } else {
            (u, 0.0)
        }
    } else {
        (u, rng.random())
    }
}

type Closed = fn(f64, f64) -> crate::Result<f64>;
type Oracle = fn(f64, f64, &QuadratureConfig) -> crate::Result<f64>;

/// Compares `g_term` with LIT-by-quadrature and `delta_h_term` with both
/// discount oracles over `n_pairs` sampled pairs.
///
/// Each comparison yields two reports: one for interior pairs at
/// `tol.oracle` and one (suffixed `.boundary`) for pairs with a coordinate
/// below [`BOUNDARY`] at `tol.oracle_boundary`. A quadrature that fails to
/// converge fails its report.
pub fn check_oracle_agreement(
    n_pairs: usize,
    n_boundary: usize,
    seed: u64,
    cfg: &QuadratureConfig,
    tol: &Tolerances,
) -> Result<Vec<PropertyReport>> {
    cfg.validate()?;
    let pairs: Vec<(f64, f64)> = (0..n_pairs)
        .map(|i| oracle_pair(seed, i, n_boundary))
        .collect();
    let checks: [(&str, Closed, Oracle); 3] = [
        ("oracle.lit", g_term::<f64>, lit_by_quadrature),
        (
            "oracle.discount",
            delta_h_term::<f64>,
            discount_by_quadrature,
        ),
        (
            "oracle.discount_weighted_mean",
            delta_h_term::<f64>,
            discount_by_weighted_mean,
        ),
    ];

    let mut out = Vec::new();
    for (name, closed, oracle) in checks {
        let errors: Vec<(f64, serde_json::Value)> = pairs
            .par_iter()
            .map(|&(p, q)| {
                let c = closed(p, q).expect("sampled pairs lie in [0, 1]");
                match oracle(p, q, cfg) {
                    Ok(o) => (
                        (c - o).abs(),
                        json!({"p": p, "q": q, "closed_form": c, "quadrature": o}),
                    ),
                    Err(e) => (
                        f64::INFINITY,
                        json!({"p": p, "q": q, "error": e.to_string()}),
                    ),
                }
            })
            .collect();
        for boundary in [false, true] {
            let worst = errors
                .iter()
                .enumerate()
                .filter(|(i, _)| (pairs[*i].0.min(pairs[*i].1) < BOUNDARY) == boundary)
                .map(|(i, (e, inputs))| Extreme::new(*e, i, inputs.clone()))
                .reduce(Extreme::max);
            let count = errors
                .iter()
                .enumerate()
                .filter(|(i, _)| (pairs[*i].0.min(pairs[*i].1) < BOUNDARY) == boundary)
                .count();
            let (suffix, t) = if boundary {
                (".boundary", tol.oracle_boundary)
            } else {
                ("", tol.oracle)
            };
            let (value, inputs) = worst
                .map(|w| (w.value, w.inputs))
                .unwrap_or((0.0, json!(null)));
            out.push(PropertyReport::equality(
                format!("{name}{suffix}"),
                count as u64,
                value,
                inputs,
                t,
                seed,
            ));
        }
    }
    Ok(out)
}
