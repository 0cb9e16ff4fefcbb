//! Replayable random draws.
//!
//! Every sample gets its own ChaCha8 stream keyed by `(seed, stream)`, so a
//! sample's values do not depend on how many samples came before it or on
//! which thread evaluates it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::Distribution;

/// Stream tags keep the suites' streams disjoint.
pub(crate) const TAG_AXIOMS: u64 = 1;
pub(crate) const TAG_SCALING: u64 = 2;
pub(crate) const TAG_SUPREMUM: u64 = 3;
pub(crate) const TAG_ORACLE: u64 = 4;

/// The generator for sample `index` of stream family `(tag, dim)`.
pub fn sample_rng(seed: u64, tag: u64, dim: usize, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((tag << 56) | ((dim as u64) << 40) | index as u64);
    rng
}

/// Uniform draw from the probability simplex (symmetric Dirichlet(1)) by
/// normalizing independent unit exponentials.
pub fn uniform_simplex<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        let draws: Vec<f64> = (0..dim).map(|_| rng.sample::<f64, _>(Exp1)).collect();
        let total: f64 = draws.iter().sum();
        if total > 0.0 {
            return draws.into_iter().map(|d| d / total).collect();
        }
    }
}

/// Fixed outcome labels `x00, x01, ...`; zero-padded so lexicographic order
/// matches index order.
pub fn outcome_labels(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("x{i:02}")).collect()
}

pub fn simplex_distribution<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Distribution<f64> {
    Distribution::new(outcome_labels(dim), uniform_simplex(rng, dim))
        .expect("simplex draw is a valid distribution")
}
