//! Degree distributions: probability masses from the exact engine and
//! theory, empirical frequencies from simulation.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistributionKind {
    Probability,
    Frequency,
}

/// Map degree `k -> value` with declared support bounds. Values are
/// probability masses or empirical frequencies depending on `kind`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution<S> {
    pub entries: BTreeMap<u64, S>,
    pub kind: DistributionKind,
    pub support_min: u64,
    pub support_max: u64,
}

impl<S: Scalar> DegreeDistribution<S> {
    pub fn new(kind: DistributionKind, entries: BTreeMap<u64, S>) -> Self {
        let support_min = entries.keys().next().copied().unwrap_or(0);
        let support_max = entries.keys().next_back().copied().unwrap_or(0);
        DegreeDistribution {
            entries,
            kind,
            support_min,
            support_max,
        }
    }

    pub fn value(&self, k: u64) -> S {
        self.entries.get(&k).cloned().unwrap_or_else(S::zero)
    }

    pub fn total_mass(&self) -> S {
        self.entries
            .values()
            .fold(S::zero(), |acc, v| acc + v.clone())
    }

    pub fn to_f64(&self) -> DegreeDistribution<f64> {
        DegreeDistribution {
            entries: self
                .entries
                .iter()
                .map(|(&k, v)| (k, v.to_f64()))
                .collect(),
            kind: self.kind,
            support_min: self.support_min,
            support_max: self.support_max,
        }
    }
}
