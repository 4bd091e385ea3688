//! Network degree `P(k,T)`: the average over vertices `I = 1..T` of the
//! per-vertex laws, truncated at a degree cutoff.
//!
//! The per-vertex sweep keeps a dense state vector over `k ∈ [m, k_max]`
//! plus one absorbing sink for mass beyond the cutoff. Degrees never
//! decrease, so the tracked entries stay exact; only the sink is lumped.
//! The remaining mass `Σ_{k>k_max} P(k,T)` is reported so truncation
//! error can be bounded explicitly.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::dist::{DegreeDistribution, DistributionKind};
use crate::error::{invalid, Result};
use crate::scalar::Scalar;

use super::{insertion_distribution, transition_probs_into};

#[derive(Debug, Clone)]
pub struct NetworkDegree<S> {
    pub t: u64,
    pub m: u32,
    pub k_max: u64,
    pub dist: DegreeDistribution<S>,
    /// `Σ_{k > k_max} P(k, T)`.
    pub truncated_mass: S,
}

/// Default cutoff used by callers that do not pick one.
pub fn default_k_max(m: u32) -> u64 {
    m as u64 + 60
}

/// Law of `k_I(t)` restricted to `k <= k_max`, as a dense vector indexed
/// by `k - m`, plus the sink mass that crossed the cutoff.
pub fn vertex_law_capped<S: Scalar>(
    vertex: u64,
    t: u64,
    m: u32,
    k_max: u64,
) -> Result<(Vec<S>, S)> {
    if vertex < 1 || t < vertex {
        return Err(invalid("need 1 <= vertex <= t"));
    }
    if k_max < m as u64 {
        return Err(invalid("k_max must be >= m"));
    }
    let width = (k_max - m as u64 + 1) as usize;
    let mut cur = vec![S::zero(); width];
    let mut sink = S::zero();

    for (k, p) in insertion_distribution::<S>(vertex, m)?.masses {
        if k <= k_max {
            cur[(k - m as u64) as usize] = p;
        } else {
            sink = sink + p;
        }
    }

    let mut row = Vec::new();
    let mut scratch = Vec::new();
    for time in vertex..t {
        let mut next = vec![S::zero(); width];
        for (i, p) in cur.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let k = m as u64 + i as u64;
            transition_probs_into::<S>(k, time, m, &mut row, &mut scratch);
            for (j, q) in row.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                let target = i + j;
                if target < width {
                    next[target] = next[target].clone() + p.clone() * q.clone();
                } else {
                    sink = sink.clone() + p.clone() * q.clone();
                }
            }
        }
        cur = next;
    }
    Ok((cur, sink))
}

/// `P(k, T)` for `k ∈ [m, k_max]` with the truncated remainder mass.
/// Per-vertex sweeps run in parallel; the final reduction is a fixed
/// sequential fold so results do not depend on worker count.
pub fn network_degree<S: Scalar>(t: u64, m: u32, k_max: u64) -> Result<NetworkDegree<S>> {
    if t < 1 {
        return Err(invalid("T must be >= 1"));
    }
    if k_max < m as u64 {
        return Err(invalid("k_max must be >= m"));
    }
    let per_vertex: Vec<Result<(Vec<S>, S)>> = (1..=t)
        .into_par_iter()
        .map(|vertex| vertex_law_capped::<S>(vertex, t, m, k_max))
        .collect();

    let width = (k_max - m as u64 + 1) as usize;
    let mut sums = vec![S::zero(); width];
    let mut sink_sum = S::zero();
    for r in per_vertex {
        let (law, sink) = r?;
        for (acc, v) in sums.iter_mut().zip(law) {
            *acc = acc.clone() + v;
        }
        sink_sum = sink_sum + sink;
    }

    let inv_t = S::ratio(1, t);
    let entries: BTreeMap<u64, S> = sums
        .into_iter()
        .enumerate()
        .map(|(i, v)| (m as u64 + i as u64, v * inv_t.clone()))
        .collect();
    Ok(NetworkDegree {
        t,
        m,
        k_max,
        dist: DegreeDistribution::new(DistributionKind::Probability, entries),
        truncated_mass: sink_sum * inv_t,
    })
}
