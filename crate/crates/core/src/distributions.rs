//! Finite probability distributions over labeled outcomes.
//!
//! Outcomes are always stored in lexicographic label order, so two
//! distributions over the same label set line up index by index no matter
//! how they were built.

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result, Scalar};

/// A probability: a scalar in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Probability<T>(T);

impl<T: Scalar> Probability<T> {
    pub fn new(value: T) -> Result<Self> {
        if value.is_finite() && value >= T::zero() && value <= T::one() {
            Ok(Self(value))
        } else {
            Err(Error::Domain(value.as_f64()))
        }
    }

    #[inline]
    pub fn get(self) -> T {
        self.0
    }
}

/// A probability mass function over uniquely labeled outcomes.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution<T> {
    labels: Vec<String>,
    masses: Vec<T>,
}

impl<T: Scalar> Distribution<T> {
    /// Builds a distribution from non-negative weights, normalizing them to
    /// unit mass. Outcomes are reordered lexicographically by label.
    pub fn new<L, W>(labels: L, weights: W) -> Result<Self>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        W: IntoIterator<Item = T>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let weights: Vec<T> = weights.into_iter().collect();
        if labels.len() != weights.len() {
            return Err(Error::LengthMismatch {
                labels: labels.len(),
                weights: weights.len(),
            });
        }
        for (label, &w) in labels.iter().zip(&weights) {
            if !w.is_finite() {
                return Err(Error::NonFiniteInput {
                    label: label.clone(),
                });
            }
            if w < T::zero() {
                return Err(Error::NegativeWeight {
                    label: label.clone(),
                    value: w.as_f64(),
                });
            }
        }

        let mut entries: Vec<(String, T)> = labels.into_iter().zip(weights).collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateLabel(w[0].0.clone()));
        }

        let total: T = entries.iter().map(|(_, w)| *w).sum();
        if total <= T::zero() {
            return Err(Error::AllZero);
        }
        if !total.is_finite() {
            return Err(Error::NonFiniteInput {
                label: "<sum>".to_string(),
            });
        }

        let (labels, masses) = entries.into_iter().map(|(l, w)| (l, w / total)).unzip();
        Ok(Self { labels, masses })
    }

    /// Builds a distribution from `(label, weight)` pairs.
    pub fn from_pairs<I, S>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, T)>,
        S: Into<String>,
    {
        let (labels, weights): (Vec<String>, Vec<T>) =
            pairs.into_iter().map(|(l, w)| (l.into(), w)).unzip();
        Self::new(labels, weights)
    }

    /// Mixes every mass with `epsilon` and renormalizes:
    /// `(m + epsilon) / (1 + n * epsilon)`.
    pub fn smooth(&self, epsilon: T) -> Result<Self> {
        if !epsilon.is_finite() || epsilon <= T::zero() {
            return Err(Error::NonPositiveEpsilon(epsilon.as_f64()));
        }
        let n = T::from_usize(self.len()).expect("outcome count fits scalar");
        let denom = T::one() + n * epsilon;
        Ok(Self {
            labels: self.labels.clone(),
            masses: self.masses.iter().map(|&m| (m + epsilon) / denom).collect(),
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn masses(&self) -> &[T] {
        &self.masses
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    /// Mass of `label`, or `None` when the outcome is not in the support list.
    pub fn mass(&self, label: &str) -> Option<T> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .ok()
            .map(|i| self.masses[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, T)> + '_ {
        self.labels
            .iter()
            .map(String::as_str)
            .zip(self.masses.iter().copied())
    }

    pub fn total_mass(&self) -> T {
        self.masses.iter().copied().sum()
    }
}

impl<T: Scalar> fmt::Display for Distribution<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (l, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}: {m}")?;
        }
        write!(f, "}}")
    }
}

/// Extends both distributions to the union of their outcome sets. Missing
/// outcomes get mass exactly zero; existing masses are copied unchanged.
pub fn align<T: Scalar>(
    p: &Distribution<T>,
    q: &Distribution<T>,
) -> (Distribution<T>, Distribution<T>) {
    if p.labels == q.labels {
        return (p.clone(), q.clone());
    }
    let mut merged: BTreeMap<&str, (T, T)> = BTreeMap::new();
    for (l, m) in p.iter() {
        merged.entry(l).or_default().0 = m;
    }
    for (l, m) in q.iter() {
        merged.entry(l).or_default().1 = m;
    }
    let labels: Vec<String> = merged.keys().map(|l| l.to_string()).collect();
    let (pm, qm) = merged.values().copied().unzip();
    (
        Distribution {
            labels: labels.clone(),
            masses: pm,
        },
        Distribution { labels, masses: qm },
    )
}

/// A distribution with the name it was given in an input file.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedDistribution<T> {
    pub name: String,
    pub dist: Distribution<T>,
}

impl<T: Scalar> NamedDistribution<T> {
    pub fn new(name: impl Into<String>, dist: Distribution<T>) -> Self {
        Self {
            name: name.into(),
            dist,
        }
    }
}
