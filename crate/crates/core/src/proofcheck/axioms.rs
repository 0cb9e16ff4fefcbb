//! Randomized metric-axiom, scaling, and boundedness checks.

use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::report::{Extreme, PropertyReport};
use super::sampling::{
    outcome_labels, sample_rng, simplex_distribution, uniform_simplex, TAG_AXIOMS, TAG_SCALING,
    TAG_SUPREMUM,
};
use super::Tolerances;
use crate::baselines::{kl, tv};
use crate::measure::{dl_term, dlite, dlite_cbrt};
use crate::{Distribution, Error};

/// Outcome counts the axiom sampler accepts.
pub const DIM_RANGE: std::ops::RangeInclusive<usize> = 2..=16;

/// Below this total variation two sampled distributions count as equal.
pub const IDENTITY_TV_THRESHOLD: f64 = 1e-6;

fn masses(d: &Distribution<f64>) -> Value {
    json!(d.masses())
}

fn total(p: &Distribution<f64>, q: &Distribution<f64>) -> f64 {
    dlite(p, q).expect("sampled distributions are valid").total
}

fn cbrt(p: &Distribution<f64>, q: &Distribution<f64>) -> f64 {
    dlite_cbrt(p, q).expect("sampled distributions are valid")
}

/// Per-triple measurements; each field is reduced independently.
struct TripleStats {
    nonneg: f64,
    identity: f64,
    self_distance: f64,
    symmetry: f64,
    symmetric_bits: bool,
    triangle: f64,
    triangle_term: f64,
}

fn triangle_slack(d: impl Fn(usize, usize) -> f64) -> f64 {
    // Every vertex as the midpoint.
    [
        (0, 1, 2),
        (1, 2, 0),
        (2, 0, 1),
        (0, 2, 1),
        (1, 0, 2),
        (2, 1, 0),
    ]
    .iter()
    .map(|&(a, m, b)| d(a, m) + d(m, b) - d(a, b))
    .fold(f64::INFINITY, f64::min)
}

fn measure_triple(t: &[Distribution<f64>; 3]) -> TripleStats {
    let pairs = [(0, 1), (1, 2), (0, 2)];
    let mut dl = [[0.0; 3]; 3];
    let mut cb = [[0.0; 3]; 3];
    let mut symmetry: f64 = 0.0;
    let mut symmetric_bits = true;
    for &(a, b) in &pairs {
        let (ab, ba) = (total(&t[a], &t[b]), total(&t[b], &t[a]));
        let (cab, cba) = (cbrt(&t[a], &t[b]), cbrt(&t[b], &t[a]));
        symmetric_bits &= ab.to_bits() == ba.to_bits() && cab.to_bits() == cba.to_bits();
        symmetry = symmetry.max((ab - ba).abs()).max((cab - cba).abs());
        dl[a][b] = ab;
        dl[b][a] = ba;
        cb[a][b] = cab;
        cb[b][a] = cba;
    }

    let nonneg = pairs
        .iter()
        .map(|&(a, b)| dl[a][b])
        .fold(f64::INFINITY, f64::min);

    let mut identity = f64::INFINITY;
    for &(a, b) in &pairs {
        if tv(&t[a], &t[b]).expect("valid") > IDENTITY_TV_THRESHOLD {
            identity = identity.min(dl[a][b]);
        }
    }
    let self_distance = t.iter().map(|d| total(d, d).abs()).fold(0.0, f64::max);

    let triangle = triangle_slack(|a, b| cb[a][b]);

    let n = t[0].len();
    let mut triangle_term = f64::INFINITY;
    for k in 0..n {
        let m = [t[0].masses()[k], t[1].masses()[k], t[2].masses()[k]];
        let d = |a: usize, b: usize| dl_term(m[a], m[b]).expect("valid").cbrt();
        triangle_term = triangle_term.min(triangle_slack(d));
    }

    TripleStats {
        nonneg,
        identity,
        self_distance,
        symmetry,
        symmetric_bits,
        triangle,
        triangle_term,
    }
}

fn sample_triple(seed: u64, dim: usize, index: usize) -> [Distribution<f64>; 3] {
    let mut rng = sample_rng(seed, TAG_AXIOMS, dim, index);
    [
        simplex_distribution(&mut rng, dim),
        simplex_distribution(&mut rng, dim),
        simplex_distribution(&mut rng, dim),
    ]
}

fn triple_inputs(t: &[Distribution<f64>; 3], index: usize) -> Value {
    json!({"sample": index, "p": masses(&t[0]), "q": masses(&t[1]), "r": masses(&t[2])})
}

/// Metric axioms for one explicit triple; used for the degenerate and
/// point-mass cases and by the sampler.
pub fn check_triple(t: &[Distribution<f64>; 3], tol: &Tolerances) -> Vec<PropertyReport> {
    axiom_reports("", 1, 0, tol, |f| {
        let s = measure_triple(t);
        Extreme::new(f(&s), 0, triple_inputs(t, 0))
    })
}

fn axiom_reports(
    suffix: &str,
    samples: u64,
    seed: u64,
    tol: &Tolerances,
    reduce: impl Fn(&(dyn Fn(&TripleStats) -> f64 + Sync)) -> Extreme<Value>,
) -> Vec<PropertyReport> {
    let nonneg = reduce(&|s| s.nonneg);
    let identity = reduce(&|s| s.identity);
    let self_distance = reduce(&|s| -s.self_distance);
    let symmetry = reduce(&|s| {
        if s.symmetric_bits {
            0.0
        } else {
            -s.symmetry.max(f64::MIN_POSITIVE)
        }
    });
    let triangle = reduce(&|s| s.triangle);
    let triangle_term = reduce(&|s| s.triangle_term);

    let identity_passed = identity.value > 0.0 && self_distance.value == 0.0;
    // No distinguishable pair sampled: nothing can falsify strict positivity.
    let identity_worst = if identity.value.is_finite() {
        identity.value
    } else {
        0.0
    };
    vec![
        PropertyReport::inequality(
            format!("metric.nonnegativity{suffix}"),
            samples,
            nonneg.value,
            nonneg.inputs,
            0.0,
            seed,
        ),
        PropertyReport {
            property_name: format!("metric.identity{suffix}"),
            samples,
            // Smallest divergence between distinguishable distributions; must
            // be strictly positive, and every self-distance exactly zero.
            worst_violation: if self_distance.value < 0.0 {
                self_distance.value
            } else {
                identity_worst
            },
            worst_case_inputs: if self_distance.value < 0.0 {
                self_distance.inputs
            } else {
                identity.inputs
            },
            passed: identity_passed,
            seed,
        },
        PropertyReport::equality(
            format!("metric.symmetry{suffix}"),
            samples,
            symmetry.value,
            symmetry.inputs,
            0.0,
            seed,
        ),
        PropertyReport::inequality(
            format!("metric.triangle_cbrt{suffix}"),
            samples,
            triangle.value,
            triangle.inputs,
            tol.triangle,
            seed,
        ),
        PropertyReport::inequality(
            format!("metric.triangle_cbrt_per_outcome{suffix}"),
            samples,
            triangle_term.value,
            triangle_term.inputs,
            tol.triangle,
            seed,
        ),
    ]
}

/// Samples `n_samples` Dirichlet(1) triples per dimension and checks
/// non-negativity, identity, bit-exact symmetry, and the triangle inequality
/// on the cube root, both for distribution totals and per outcome.
///
/// Reports are named `metric.<axiom>[d=<dim>]`.
pub fn check_metric_axioms(
    n_samples: usize,
    dims: &[usize],
    seed: u64,
    tol: &Tolerances,
) -> crate::Result<Vec<PropertyReport>> {
    validate_sampling(n_samples, dims)?;
    let mut out = Vec::new();
    for &dim in dims {
        let stats: Vec<TripleStats> = (0..n_samples)
            .into_par_iter()
            .map(|i| measure_triple(&sample_triple(seed, dim, i)))
            .collect();
        let reduce = |f: &(dyn Fn(&TripleStats) -> f64 + Sync)| {
            let (value, index) = stats
                .iter()
                .enumerate()
                .map(|(i, s)| Extreme::new(f(s), i, ()))
                .reduce(Extreme::min)
                .map(|e| (e.value, e.index))
                .expect("at least one sample");
            Extreme::new(
                value,
                index,
                triple_inputs(&sample_triple(seed, dim, index), index),
            )
        };
        out.extend(axiom_reports(
            &format!("[d={dim}]"),
            n_samples as u64,
            seed,
            tol,
            reduce,
        ));
    }
    Ok(out)
}

pub(crate) fn validate_sampling(n_samples: usize, dims: &[usize]) -> crate::Result<()> {
    if n_samples == 0 {
        return Err(Error::InvalidConfig("sample count must be positive".into()));
    }
    if dims.is_empty() {
        return Err(Error::InvalidConfig("no dimensions given".into()));
    }
    if let Some(d) = dims.iter().find(|d| !DIM_RANGE.contains(d)) {
        return Err(Error::InvalidConfig(format!(
            "dimension {d} outside {}..={}",
            DIM_RANGE.start(),
            DIM_RANGE.end()
        )));
    }
    Ok(())
}

/// Draws the scale factor for scaling sample `index`: the first nine samples
/// take the decades `1e-8 ..= 1`, the rest are log-uniform on `[1e-8, 1]`.
fn scale_factor<R: Rng>(rng: &mut R, index: usize) -> f64 {
    if index < 9 {
        10f64.powi(index as i32 - 8)
    } else {
        10f64.powf(-8.0 * rng.random::<f64>())
    }
}

/// Checks `dl(x p, x q) = x dl(p, q)` to a relative tolerance on random
/// `(p, q, x)` with `p, q` uniform on `[0, 1]`.
pub fn check_scaling_lemma(
    n_samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> crate::Result<PropertyReport> {
    if n_samples == 0 {
        return Err(Error::InvalidConfig("sample count must be positive".into()));
    }
    let (worst, q_greater) = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, TAG_SCALING, 0, i);
            let p: f64 = rng.random();
            let q: f64 = rng.random();
            let x = scale_factor(&mut rng, i);
            let lhs = dl_term(x * p, x * q).expect("scaled probabilities stay in [0, 1]");
            let rhs = x * dl_term(p, q).expect("valid");
            let rel = (lhs - rhs).abs() / rhs.max(1e-300);
            (Extreme::new(rel, i, (p, q, x, lhs, rhs)), (q > p) as u64)
        })
        .reduce_with(|(a, na), (b, nb)| (a.max(b), na + nb))
        .expect("at least one sample");
    let (p, q, x, lhs, rhs) = worst.inputs;
    Ok(PropertyReport::equality(
        "scaling.linear_in_scale",
        n_samples as u64,
        worst.value,
        json!({"sample": worst.index, "p": p, "q": q, "x": x, "scaled": lhs, "expected": rhs,
               "samples_with_q_greater": q_greater}),
        tol.scaling,
        seed,
    ))
}

fn dl_sum(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .map(|(&a, &b)| dl_term(a.min(1.0), b.min(1.0)).expect("valid"))
        .sum()
}

const ASCENT_FRACTIONS: [f64; 4] = [1.0, 0.5, 0.1, 0.01];
const ASCENT_MAX_ROUNDS: usize = 10_000;

/// Greedy coordinate ascent on DLITE: repeatedly moves a fraction of one
/// outcome's mass onto another (in either distribution) while that strictly
/// increases the total.
pub fn coordinate_ascent(mut p: Vec<f64>, mut q: Vec<f64>) -> (Vec<f64>, Vec<f64>, f64) {
    let n = p.len();
    let mut best = dl_sum(&p, &q);
    for _ in 0..ASCENT_MAX_ROUNDS {
        let mut improved = false;
        for side in 0..2 {
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    for frac in ASCENT_FRACTIONS {
                        let v = if side == 0 { &p } else { &q };
                        if v[j] == 0.0 {
                            break;
                        }
                        let mut cand = v.clone();
                        if frac == 1.0 {
                            cand[i] += cand[j];
                            cand[j] = 0.0;
                        } else {
                            let amount = cand[j] * frac;
                            cand[i] += amount;
                            cand[j] -= amount;
                        }
                        let value = if side == 0 {
                            dl_sum(&cand, &q)
                        } else {
                            dl_sum(&p, &cand)
                        };
                        if value > best {
                            best = value;
                            if side == 0 {
                                p = cand;
                            } else {
                                q = cand;
                            }
                            improved = true;
                            break;
                        }
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }
    (p, q, best)
}

// (dim, p, q)
type Candidate = (usize, Vec<f64>, Vec<f64>);

/// Searches for the largest DLITE value: `n_samples` random pairs per
/// dimension, then coordinate ascent from the best pair of each dimension.
/// Passes when nothing exceeds `1 + tolerance`.
pub fn search_supremum(
    n_samples: usize,
    dims: &[usize],
    seed: u64,
    tol: &Tolerances,
) -> crate::Result<PropertyReport> {
    validate_sampling(n_samples, dims)?;
    let mut best: Option<Extreme<Candidate>> = None;
    let mut random_max = f64::NEG_INFINITY;
    for &dim in dims {
        let start = (0..n_samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = sample_rng(seed, TAG_SUPREMUM, dim, i);
                let p = uniform_simplex(&mut rng, dim);
                let q = uniform_simplex(&mut rng, dim);
                Extreme::new(dl_sum(&p, &q), i, (p, q))
            })
            .reduce_with(Extreme::max)
            .expect("at least one sample");
        random_max = random_max.max(start.value);
        let (p, q) = start.inputs;
        let (p, q, value) = coordinate_ascent(p, q);
        let e = Extreme::new(value, dim, (dim, p, q));
        best = Some(match best {
            Some(b) => b.max(e),
            None => e,
        });
    }
    let best = best.expect("at least one dimension");
    let (dim, p, q) = best.inputs;
    let labels = outcome_labels(dim);
    let dp = Distribution::new(labels.clone(), p.clone())?;
    let dq = Distribution::new(labels, q.clone())?;
    let max = total(&dp, &dq).max(best.value);
    let disjoint = p.iter().zip(&q).all(|(a, b)| *a == 0.0 || *b == 0.0);
    Ok(PropertyReport::inequality(
        "supremum.dlite_at_most_one",
        (n_samples * dims.len()) as u64,
        1.0 - max,
        json!({"max": max, "best_random_pair": random_max, "dim": dim, "p": p, "q": q,
               "disjoint_supports": disjoint}),
        tol.supremum,
        seed,
    ))
}

/// Contrast between DLITE and KL on `P = (1 - eps, eps)`, `Q = (1, 0)`:
/// DLITE stays at most 1 while KL(P || Q) is undefined.
pub fn check_kl_contrast(epsilons: &[f64]) -> PropertyReport {
    let q = Distribution::new(["a", "b"], [1.0, 0.0]).expect("valid");
    let mut worst = f64::INFINITY;
    let mut rows = Vec::new();
    let mut kl_always_undefined = true;
    for &eps in epsilons {
        let p = Distribution::new(["a", "b"], [1.0 - eps, eps]).expect("valid");
        let d = total(&p, &q);
        let k = kl(&p, &q);
        let undefined = matches!(k, Err(Error::KlUndefined { .. }));
        kl_always_undefined &= undefined;
        worst = worst.min(1.0 - d);
        rows.push(json!({"epsilon": eps, "dlite": d, "kl_undefined": undefined}));
    }
    PropertyReport {
        property_name: "boundedness.kl_contrast".into(),
        samples: epsilons.len() as u64,
        worst_violation: worst,
        worst_case_inputs: json!(rows),
        passed: worst >= 0.0 && kl_always_undefined,
        seed: 0,
    }
}
