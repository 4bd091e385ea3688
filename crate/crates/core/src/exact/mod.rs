//! Exact computation of the degree process `k_I(T)`: the one-step
//! transition kernel, the insertion-time (sub-step) distribution, and the
//! vertex degree law by two independent routes — forward iteration of the
//! kernel and the first-passage/survival decomposition. The network
//! degree `P(k,T)` is the average of the per-vertex laws.

mod insertion;
mod kernel;
mod network;
mod passage;

pub use insertion::{
    insertion_all_loops_prob, insertion_distribution, insertion_last_loop_sum,
    insertion_no_loop_prob,
};
pub use kernel::{
    row_prob_all, row_prob_none, row_prob_one, transition_probs_into, transition_row,
    TransitionRow,
};
pub use network::{default_k_max, network_degree, vertex_law_capped, NetworkDegree};
pub use passage::{
    degree_prob_forward, degree_prob_fp, first_passage, forward_laws, survival_product,
    FirstPassageTable, ForwardTable,
};

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// The law of `k_I(T)`: degree `k -> P(k, I, T)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexDegreeLaw<S> {
    pub vertex: u64,
    pub time: u64,
    pub m: u32,
    pub masses: BTreeMap<u64, S>,
}

impl<S: Scalar> VertexDegreeLaw<S> {
    pub fn mass(&self, k: u64) -> S {
        self.masses.get(&k).cloned().unwrap_or_else(S::zero)
    }

    pub fn total(&self) -> S {
        self.masses
            .values()
            .fold(S::zero(), |acc, v| acc + v.clone())
    }

    /// Degree support at time `time` for a vertex inserted at `vertex`:
    /// `m ..= (time - vertex + 2) * m`.
    pub fn max_degree(&self) -> u64 {
        (self.time - self.vertex + 2) * self.m as u64
    }
}

/// Largest degree vertex `I` can hold at time `t`.
pub fn degree_upper_bound(vertex: u64, t: u64, m: u32) -> u64 {
    (t - vertex + 2) * m as u64
}
