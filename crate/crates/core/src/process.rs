//! The dynamic preferential-attachment process.
//!
//! The fine process adds one vertex and one edge per step; the new edge
//! attaches to an existing vertex with probability proportional to its
//! current degree, or to the new vertex itself (a loop) with the weight
//! of a single endpoint. Sampling is a uniform draw into the flat
//! endpoint list plus one virtual slot for the new vertex, so each step
//! is O(1) with no renormalization.
//!
//! The order-`m` graph on `n` vertices is the fine process run for
//! `m * n` steps with consecutive blocks of `m` fine vertices identified.
//!
//! RNG contract: `generate` seeds a `ChaCha8Rng` with the given 64-bit
//! seed, so outputs are reproducible across platforms. Replica seed
//! derivation lives in the harness.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dist::{DegreeDistribution, DistributionKind};
use crate::error::{guard, invalid, Result};
use crate::scalar::NumericMode;

/// Hard cap on fine edges per run; keeps the endpoint list under ~2 GiB.
pub const MAX_FINE_EDGES: u64 = 250_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProcessParams {
    /// Edges added per vertex.
    pub m: u32,
    /// Number of (coarse) vertices; also the horizon T.
    pub n: u64,
    pub seed: u64,
    /// Carried for report provenance; the generator itself is always f64-free.
    pub numeric_mode: NumericMode,
}

impl ProcessParams {
    pub fn new(m: u32, n: u64, seed: u64) -> Self {
        ProcessParams {
            m,
            n,
            seed,
            numeric_mode: NumericMode::Float64,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 1 {
            return Err(invalid("m must be >= 1"));
        }
        if self.n < 1 {
            return Err(invalid("n must be >= 1"));
        }
        let fine_edges = self.m as u64 * self.n;
        if fine_edges > MAX_FINE_EDGES {
            return Err(guard(format!(
                "m*n = {fine_edges} fine edges exceeds the limit of {MAX_FINE_EDGES}"
            )));
        }
        Ok(())
    }
}

/// Evolving multigraph with loops, stored as flat arrays.
///
/// `endpoints` holds two entries per edge, `(source, target)` in insertion
/// order, with the source being the newer endpoint. A loop contributes its
/// vertex id twice. `degrees[v]` is the multiplicity of `v` in `endpoints`,
/// so a loop counts 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphState {
    pub endpoints: Vec<u32>,
    pub degrees: Vec<u32>,
    /// Edges placed so far (fine sub-step count).
    pub t: u64,
}

impl GraphState {
    pub fn empty() -> Self {
        GraphState {
            endpoints: Vec::new(),
            degrees: Vec::new(),
            t: 0,
        }
    }

    pub fn with_capacity(edges: u64) -> Self {
        GraphState {
            endpoints: Vec::with_capacity(2 * edges as usize),
            degrees: Vec::with_capacity(edges as usize),
            t: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).sum()
    }

    /// Edges as `(source, target)` pairs, 0-based vertex ids.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.endpoints.chunks_exact(2).map(|e| (e[0], e[1]))
    }

    /// Full consistency check: degrees match endpoint multiplicities and
    /// the degree sum is twice the edge count. O(edges).
    pub fn check_consistency(&self) -> bool {
        if self.endpoints.len() != 2 * self.t as usize {
            return false;
        }
        let mut mult = vec![0u32; self.degrees.len()];
        for &p in &self.endpoints {
            match mult.get_mut(p as usize) {
                Some(c) => *c += 1,
                None => return false,
            }
        }
        mult == self.degrees
    }
}

/// One fine-process step: append a new vertex and one edge from it,
/// choosing the target by a uniform index into the existing endpoint
/// list plus one virtual slot for the new vertex itself.
pub fn step_m1<R: Rng + ?Sized>(state: &mut GraphState, rng: &mut R) {
    let new_vertex = state.degrees.len() as u32;
    let slots = state.endpoints.len() as u64 + 1; // 2t - 1 for the new edge's t
    let idx = rng.random_range(0..slots) as usize;
    let target = if idx < state.endpoints.len() {
        state.endpoints[idx]
    } else {
        new_vertex
    };
    state.degrees.push(0);
    state.endpoints.push(new_vertex);
    state.endpoints.push(target);
    state.degrees[new_vertex as usize] += 1;
    state.degrees[target as usize] += 1;
    state.t += 1;

    #[cfg(debug_assertions)]
    {
        if state.t <= 10_000 {
            debug_assert!(state.check_consistency());
        }
    }
}

/// Identify consecutive blocks of `m` fine vertices. The fine vertex
/// count must be a multiple of `m`.
pub fn coarsen(fine: &GraphState, m: u32) -> Result<GraphState> {
    if m == 0 || fine.degrees.len() % m as usize != 0 {
        return Err(invalid(format!(
            "cannot identify {} fine vertices into blocks of {m}",
            fine.degrees.len()
        )));
    }
    let n = fine.degrees.len() / m as usize;
    let mut degrees = vec![0u32; n];
    let endpoints: Vec<u32> = fine.endpoints.iter().map(|&v| v / m).collect();
    for &p in &endpoints {
        degrees[p as usize] += 1;
    }
    Ok(GraphState {
        endpoints,
        degrees,
        t: fine.t,
    })
}

/// Run the full process: `m * n` fine steps, then block identification.
/// Deterministic given `(params, seed)`.
pub fn generate(params: &ProcessParams) -> Result<GraphState> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    generate_with(params, &mut rng)
}

/// As [`generate`] but with a caller-supplied RNG (used by the harness
/// for derived replica streams).
pub fn generate_with<R: Rng + ?Sized>(params: &ProcessParams, rng: &mut R) -> Result<GraphState> {
    params.validate()?;
    let fine_edges = params.m as u64 * params.n;
    let mut state = GraphState::with_capacity(fine_edges);
    for _ in 0..fine_edges {
        step_m1(&mut state, rng);
    }
    coarsen(&state, params.m)
}

/// Empirical frequency distribution of total degree over the vertices.
pub fn degree_histogram(graph: &GraphState) -> DegreeDistribution<f64> {
    let counts = degree_counts(graph);
    let n = graph.vertex_count() as f64;
    let entries: BTreeMap<u64, f64> = counts
        .into_iter()
        .map(|(k, c)| (k, c as f64 / n))
        .collect();
    DegreeDistribution::new(DistributionKind::Frequency, entries)
}

/// Integer degree counts; the harness aggregates these across replicas
/// so merges stay exact and order-independent.
pub fn degree_counts(graph: &GraphState) -> BTreeMap<u64, u64> {
    let mut counts = BTreeMap::new();
    for &d in &graph.degrees {
        *counts.entry(d as u64).or_insert(0u64) += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: u32, n: u64, seed: u64) -> ProcessParams {
        ProcessParams::new(m, n, seed)
    }

    #[test]
    fn first_step_is_the_mandated_loop() {
        let mut state = GraphState::empty();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        step_m1(&mut state, &mut rng);
        assert_eq!(state.endpoints, vec![0, 0]);
        assert_eq!(state.degrees, vec![2]);
        assert_eq!(state.t, 1);
    }

    #[test]
    fn m1_n1_is_one_vertex_one_loop() {
        for seed in 0..20 {
            let g = generate(&params(1, 1, seed)).unwrap();
            assert_eq!(g.degrees, vec![2]);
            assert_eq!(g.endpoints, vec![0, 0]);
        }
    }

    #[test]
    fn each_step_adds_two_to_total_degree() {
        let mut state = GraphState::empty();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut prev = 0;
        for _ in 0..50 {
            step_m1(&mut state, &mut rng);
            let total = state.total_degree();
            assert_eq!(total, prev + 2);
            prev = total;
        }
    }

    #[test]
    fn second_step_loop_frequency_near_one_third() {
        // v2 loops with probability 1/3, attaches to v1 with 2/3.
        let trials = 100_000u64;
        let mut loops = 0u64;
        for seed in 0..trials {
            let g = generate(&params(1, 2, seed)).unwrap();
            if g.endpoints[2] == g.endpoints[3] {
                loops += 1;
            }
        }
        let p = loops as f64 / trials as f64;
        let sigma = ((1.0 / 3.0) * (2.0 / 3.0) / trials as f64).sqrt();
        assert!(
            (p - 1.0 / 3.0).abs() < 3.0 * sigma,
            "loop frequency {p} vs 1/3 (3 sigma = {})",
            3.0 * sigma
        );
    }

    #[test]
    fn conservation_and_min_degree() {
        for &(m, n) in &[(1u32, 100u64), (2, 50), (3, 40)] {
            let g = generate(&params(m, n, 11)).unwrap();
            assert_eq!(g.total_degree(), 2 * m as u64 * n);
            assert_eq!(g.vertex_count() as u64, n);
            assert!(g.degrees.iter().all(|&d| d >= m));
            assert!(g.check_consistency());
        }
    }

    #[test]
    fn determinism() {
        let a = generate(&params(2, 500, 42)).unwrap();
        let b = generate(&params(2, 500, 42)).unwrap();
        assert_eq!(a, b);
        let c = generate(&params(2, 500, 43)).unwrap();
        assert_ne!(a.endpoints, c.endpoints);
    }

    #[test]
    fn histogram_examples() {
        let g = generate(&params(1, 1, 0)).unwrap();
        let h = degree_histogram(&g);
        assert_eq!(h.entries.len(), 1);
        assert_eq!(h.value(2), 1.0);

        // m=1, n=2: either both vertices have degree 2 (v2 loop) or the
        // degrees are 3 and 1 (v2 -> v1).
        for seed in 0..10 {
            let g = generate(&params(1, 2, seed)).unwrap();
            let h = degree_histogram(&g);
            if g.endpoints[2] == g.endpoints[3] {
                assert_eq!(h.value(2), 1.0);
            } else {
                assert_eq!(h.value(1), 0.5);
                assert_eq!(h.value(3), 0.5);
            }
        }
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(params(0, 5, 0).validate().is_err());
        assert!(params(1, 0, 0).validate().is_err());
        assert!(matches!(
            params(1, MAX_FINE_EDGES + 1, 0).validate(),
            Err(crate::error::Error::ResourceGuard(_))
        ));
    }

    #[test]
    fn coarsen_m2() {
        // Fine graph: v0 loop, v1 -> v0, v2 -> v1, v3 loop.
        let fine = GraphState {
            endpoints: vec![0, 0, 1, 0, 2, 1, 3, 3],
            degrees: vec![3, 2, 1, 2],
            t: 4,
        };
        let coarse = coarsen(&fine, 2).unwrap();
        assert_eq!(coarse.degrees, vec![5, 3]);
        assert_eq!(coarse.endpoints, vec![0, 0, 0, 0, 1, 0, 1, 1]);
        assert!(coarse.check_consistency());
    }
}
