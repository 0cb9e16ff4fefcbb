use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::baselines::{jsd, kl, tv};
use crate::distributions::{Distribution, NamedDistribution};
use crate::measure::{delta_h, dlite, dlite_cbrt, lit};
use crate::{Error, Result, Scalar};

/// Which divergence to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MeasureKind {
    Dlite,
    DliteCbrt,
    Lit,
    DeltaH,
    Kl,
    Jsd,
    Tv,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 7] = [
        MeasureKind::Dlite,
        MeasureKind::DliteCbrt,
        MeasureKind::Lit,
        MeasureKind::DeltaH,
        MeasureKind::Kl,
        MeasureKind::Jsd,
        MeasureKind::Tv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::Dlite => "dlite",
            MeasureKind::DliteCbrt => "dlite-cbrt",
            MeasureKind::Lit => "lit",
            MeasureKind::DeltaH => "delta-h",
            MeasureKind::Kl => "kl",
            MeasureKind::Jsd => "jsd",
            MeasureKind::Tv => "tv",
        }
    }

    pub fn is_symmetric(self) -> bool {
        self != MeasureKind::Kl
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        MeasureKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = MeasureKind::ALL.iter().map(|k| k.name()).collect();
                format!(
                    "unknown measure `{s}` (expected one of {})",
                    names.join(", ")
                )
            })
    }
}

/// Evaluates a single measure between two distributions.
pub fn measure_value<T: Scalar>(
    kind: MeasureKind,
    p: &Distribution<T>,
    q: &Distribution<T>,
) -> Result<T> {
    match kind {
        MeasureKind::Dlite => dlite(p, q).map(|r| r.total),
        MeasureKind::DliteCbrt => dlite_cbrt(p, q),
        MeasureKind::Lit => lit(p, q).map(|r| r.total),
        MeasureKind::DeltaH => delta_h(p, q).map(|r| r.total),
        MeasureKind::Kl => kl(p, q),
        MeasureKind::Jsd => jsd(p, q),
        MeasureKind::Tv => tv(p, q),
    }
}

/// Pairwise divergences with row/column labels, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix<T> {
    pub labels: Vec<String>,
    pub kind: MeasureKind,
    values: Vec<T>,
}

impl<T: Scalar> DistanceMatrix<T> {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.len() + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        let n = self.len();
        &self.values[i * n..(i + 1) * n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> + '_ {
        self.values.chunks(self.len().max(1))
    }
}

/// Computes the matrix `M[i][j] = measure(ds[i], ds[j])`.
///
/// Symmetric measures evaluate the upper triangle once and mirror it; KL
/// evaluates every off-diagonal cell. Cells are computed in parallel and the
/// result does not depend on evaluation order. The first error in row-major
/// order is returned.
pub fn distance_matrix<T: Scalar>(
    ds: &[NamedDistribution<T>],
    kind: MeasureKind,
) -> Result<DistanceMatrix<T>> {
    if ds.is_empty() {
        return Err(Error::Empty);
    }
    let n = ds.len();
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && (!kind.is_symmetric() || i < j))
        .collect();
    let computed: Vec<Result<T>> = cells
        .par_iter()
        .map(|&(i, j)| measure_value(kind, &ds[i].dist, &ds[j].dist))
        .collect();

    let mut values = vec![T::zero(); n * n];
    for (&(i, j), v) in cells.iter().zip(computed) {
        let v = v?;
        values[i * n + j] = v;
        if kind.is_symmetric() {
            values[j * n + i] = v;
        }
    }
    Ok(DistanceMatrix {
        labels: ds.iter().map(|d| d.name.clone()).collect(),
        kind,
        values,
    })
}
