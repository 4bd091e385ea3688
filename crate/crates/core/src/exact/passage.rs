//! Vertex degree law by two independent routes.
//!
//! Forward route: start from the insertion distribution and iterate the
//! kernel (Chapman-Kolmogorov). First-passage route: decompose
//! `P(k,I,T)` into the probability of first reaching degree `k` at time
//! `S` times the survival product over `S+1..T`, summed over `S`. The two
//! must agree — exactly in rational mode — and that agreement is one of
//! the artifact's acceptance gates.

use std::collections::BTreeMap;

use crate::error::{invalid, Result};
use crate::scalar::Scalar;

use super::{degree_upper_bound, insertion_distribution, transition_probs_into, VertexDegreeLaw};

/// Forward laws of `k_I(τ)` for every `τ = vertex ..= t_max`, one kernel
/// sweep. Entry `i` is the law at time `vertex + i`.
pub fn forward_laws<S: Scalar>(vertex: u64, t_max: u64, m: u32) -> Result<Vec<VertexDegreeLaw<S>>> {
    if vertex < 1 || t_max < vertex {
        return Err(invalid("need 1 <= vertex <= t_max"));
    }
    let mut laws = Vec::with_capacity((t_max - vertex + 1) as usize);
    laws.push(insertion_distribution::<S>(vertex, m)?);
    let mut row: Vec<S> = Vec::new();
    let mut scratch: Vec<S> = Vec::new();
    for time in vertex..t_max {
        let cur = laws.last().unwrap();
        let mut next: BTreeMap<u64, S> = BTreeMap::new();
        for (&k, p) in &cur.masses {
            transition_probs_into::<S>(k, time, m, &mut row, &mut scratch);
            for (j, q) in row.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                let entry = next.entry(k + j as u64).or_insert_with(S::zero);
                *entry = entry.clone() + p.clone() * q.clone();
            }
        }
        laws.push(VertexDegreeLaw {
            vertex,
            time: time + 1,
            m,
            masses: next,
        });
    }
    Ok(laws)
}

/// The full law of `k_I(T)` by forward iteration.
pub fn degree_prob_forward<S: Scalar>(vertex: u64, t: u64, m: u32) -> Result<VertexDegreeLaw<S>> {
    Ok(forward_laws::<S>(vertex, t, m)?.pop().unwrap())
}

/// Forward laws of one vertex at every time up to a horizon; the law
/// provider for the first-passage recursion.
#[derive(Debug, Clone)]
pub struct ForwardTable<S> {
    pub vertex: u64,
    pub m: u32,
    laws: Vec<VertexDegreeLaw<S>>,
}

impl<S: Scalar> ForwardTable<S> {
    pub fn build(vertex: u64, t_max: u64, m: u32) -> Result<Self> {
        Ok(ForwardTable {
            vertex,
            m,
            laws: forward_laws::<S>(vertex, t_max, m)?,
        })
    }

    pub fn t_max(&self) -> u64 {
        self.vertex + self.laws.len() as u64 - 1
    }

    pub fn law(&self, time: u64) -> Option<&VertexDegreeLaw<S>> {
        time.checked_sub(self.vertex)
            .and_then(|i| self.laws.get(i as usize))
    }

    pub fn mass(&self, k: u64, time: u64) -> S {
        self.law(time).map(|l| l.mass(k)).unwrap_or_else(S::zero)
    }
}

/// First-passage probability `f(k, I, S)`: the degree of vertex `I`
/// first equals `k` at time `S`. Degrees are nondecreasing, so for
/// `S > I` the chain must sit at `k - j` at `S - 1` and gain `j >= 1`;
/// degree `m` is only attainable at insertion.
pub fn first_passage<S: Scalar>(
    k: u64,
    vertex: u64,
    s: u64,
    m: u32,
    table: &ForwardTable<S>,
) -> Result<S> {
    if table.vertex != vertex || table.m != m {
        return Err(invalid("forward table built for a different (vertex, m)"));
    }
    if vertex < 1 || s < vertex {
        return Err(invalid("need 1 <= vertex <= S"));
    }
    if k < m as u64 || k > degree_upper_bound(vertex, s, m) {
        return Err(invalid(format!(
            "k = {k} outside the reachable range at S = {s}"
        )));
    }
    if s == vertex {
        return Ok(table.mass(k, s));
    }
    if k == m as u64 {
        return Ok(S::zero());
    }
    let mut total = S::zero();
    let mut row: Vec<S> = Vec::new();
    let mut scratch: Vec<S> = Vec::new();
    for j in 1..=m as u64 {
        if k < j + m as u64 {
            break; // k - j below the minimum degree
        }
        let prev = table.mass(k - j, s - 1);
        if prev.is_zero() {
            continue;
        }
        transition_probs_into::<S>(k - j, s - 1, m, &mut row, &mut scratch);
        total = total + prev * row[j as usize].clone();
    }
    Ok(total)
}

/// Survival product `Π_{A=S+1..T} Π_{q=1..m} (1 - k / (2(A-1)m + 2(q-1) + 1))`:
/// probability that a degree-`k` vertex gains nothing over `S+1..T`.
/// The empty product (`S = T`) is 1.
pub fn survival_product<S: Scalar>(k: u64, s: u64, t: u64, m: u32) -> Result<S> {
    if s < 1 || t < s {
        return Err(invalid("need 1 <= S <= T"));
    }
    // Smallest denominator is 2Sm + 1; a factor <= 0 means k is not a
    // valid degree at time S.
    if t > s && k >= 2 * s * m as u64 + 1 {
        return Err(invalid(format!(
            "k = {k} too large: nonpositive survival factor at time {}",
            s + 1
        )));
    }
    Ok(S::product_complements((s + 1..=t).flat_map(|a| {
        (1..=m).map(move |q| (k, 2 * (a - 1) * m as u64 + 2 * (q as u64 - 1) + 1))
    })))
}

/// `P(k, I, T)` via the first-passage/survival decomposition.
pub fn degree_prob_fp<S: Scalar>(
    k: u64,
    vertex: u64,
    t: u64,
    m: u32,
    table: &ForwardTable<S>,
) -> Result<S> {
    if vertex < 1 || t < vertex {
        return Err(invalid("need 1 <= vertex <= T"));
    }
    if k < m as u64 || k > degree_upper_bound(vertex, t, m) {
        return Err(invalid(format!("k = {k} outside the reachable range")));
    }
    let mut total = S::zero();
    for s in vertex..=t {
        if k > degree_upper_bound(vertex, s, m) {
            continue; // not yet reachable at S
        }
        let f = first_passage::<S>(k, vertex, s, m, table)?;
        if f.is_zero() {
            continue;
        }
        total = total + f * survival_product::<S>(k, s, t, m)?;
    }
    Ok(total)
}

/// Materialized `f(k, I, S)` over `S ∈ [I, t_max]`, `k ∈ [m, (S-I+2)m]`.
#[derive(Debug, Clone)]
pub struct FirstPassageTable<S> {
    pub vertex: u64,
    pub m: u32,
    pub t_max: u64,
    values: BTreeMap<(u64, u64), S>,
}

impl<S: Scalar> FirstPassageTable<S> {
    pub fn build(vertex: u64, t_max: u64, m: u32) -> Result<Self> {
        let table = ForwardTable::<S>::build(vertex, t_max, m)?;
        let mut values = BTreeMap::new();
        for s in vertex..=t_max {
            for k in m as u64..=degree_upper_bound(vertex, s, m) {
                let f = first_passage::<S>(k, vertex, s, m, &table)?;
                if !f.is_zero() {
                    values.insert((k, s), f);
                }
            }
        }
        Ok(FirstPassageTable {
            vertex,
            m,
            t_max,
            values,
        })
    }

    pub fn value(&self, k: u64, s: u64) -> S {
        self.values.get(&(k, s)).cloned().unwrap_or_else(S::zero)
    }

    /// `Σ_S f(k, I, S)` up to the table horizon; at most 1.
    pub fn mass_reaching(&self, k: u64) -> S {
        self.values
            .iter()
            .filter(|((vk, _), _)| *vk == k)
            .fold(S::zero(), |acc, (_, v)| acc + v.clone())
    }
}
