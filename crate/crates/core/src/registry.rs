//! Strategy registries: interchangeable graph generators (dynamic
//! process vs static pairing) and exact-law routes (forward kernel vs
//! first-passage decomposition), selected by name at runtime.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dist::{DegreeDistribution, DistributionKind};
use crate::error::{invalid, Result};
use crate::exact::{
    degree_prob_forward, degree_prob_fp, degree_upper_bound, ForwardTable, NetworkDegree,
    VertexDegreeLaw,
};
use crate::pairing::{pairing_to_graph, sample_pairing};
use crate::process::{generate, GraphState, ProcessParams};
use crate::scalar::Scalar;

/// A way of drawing one LCD graph. Implementations must be deterministic
/// given `(params, params.seed)`.
pub trait Generator: Send + Sync {
    fn name(&self) -> &'static str;
    fn generate(&self, params: &ProcessParams) -> Result<GraphState>;
}

/// The sub-step attachment process.
pub struct DynamicProcess;

impl Generator for DynamicProcess {
    fn name(&self) -> &'static str {
        "dynamic"
    }
    fn generate(&self, params: &ProcessParams) -> Result<GraphState> {
        generate(params)
    }
}

/// Uniform chord pairing pushed through the chord-diagram map.
pub struct PairingConstruction;

impl Generator for PairingConstruction {
    fn name(&self) -> &'static str {
        "pairing"
    }
    fn generate(&self, params: &ProcessParams) -> Result<GraphState> {
        params.validate()?;
        let points = 2 * params.m as u64 * params.n;
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let pairing = sample_pairing(points as usize, &mut rng)?;
        pairing_to_graph(&pairing, params.m)
    }
}

pub const GENERATORS: &[&dyn Generator] = &[&DynamicProcess, &PairingConstruction];

pub fn generator(name: &str) -> Result<&'static dyn Generator> {
    GENERATORS
        .iter()
        .copied()
        .find(|g| g.name() == name)
        .ok_or_else(|| {
            invalid(format!(
                "unknown generator `{name}` (available: {})",
                generator_names().join(", ")
            ))
        })
}

pub fn generator_names() -> Vec<&'static str> {
    GENERATORS.iter().map(|g| g.name()).collect()
}

/// A way of computing the exact law of `k_I(T)`.
pub trait ExactRoute<S: Scalar>: Send + Sync {
    fn name(&self) -> &'static str;
    fn vertex_law(&self, vertex: u64, t: u64, m: u32) -> Result<VertexDegreeLaw<S>>;
}

/// Forward iteration of the kernel from the insertion distribution.
pub struct ForwardRoute;

impl<S: Scalar> ExactRoute<S> for ForwardRoute {
    fn name(&self) -> &'static str {
        "forward"
    }
    fn vertex_law(&self, vertex: u64, t: u64, m: u32) -> Result<VertexDegreeLaw<S>> {
        degree_prob_forward(vertex, t, m)
    }
}

/// First-passage probabilities combined with survival products.
pub struct FirstPassageRoute;

impl<S: Scalar> ExactRoute<S> for FirstPassageRoute {
    fn name(&self) -> &'static str {
        "first-passage"
    }
    fn vertex_law(&self, vertex: u64, t: u64, m: u32) -> Result<VertexDegreeLaw<S>> {
        let table = ForwardTable::<S>::build(vertex, t, m)?;
        let mut masses = std::collections::BTreeMap::new();
        for k in m as u64..=degree_upper_bound(vertex, t, m) {
            let p = degree_prob_fp::<S>(k, vertex, t, m, &table)?;
            if !p.is_zero() {
                masses.insert(k, p);
            }
        }
        Ok(VertexDegreeLaw {
            vertex,
            time: t,
            m,
            masses,
        })
    }
}

pub fn exact_route<S: Scalar>(name: &str) -> Result<Box<dyn ExactRoute<S>>> {
    match name {
        "forward" => Ok(Box::new(ForwardRoute)),
        "first-passage" | "fp" => Ok(Box::new(FirstPassageRoute)),
        other => Err(invalid(format!(
            "unknown exact route `{other}` (available: forward, first-passage)"
        ))),
    }
}

/// Network degree computed by averaging one route's per-vertex laws,
/// truncated at `k_max`. Slower than the capped forward sweep but works
/// for any route; used for route cross-checks.
pub fn network_degree_via_route<S: Scalar>(
    t: u64,
    m: u32,
    k_max: u64,
    route: &dyn ExactRoute<S>,
) -> Result<NetworkDegree<S>> {
    if t < 1 || k_max < m as u64 {
        return Err(invalid("need T >= 1 and k_max >= m"));
    }
    let mut sums: std::collections::BTreeMap<u64, S> = std::collections::BTreeMap::new();
    let mut sink = S::zero();
    for vertex in 1..=t {
        let law = route.vertex_law(vertex, t, m)?;
        for (k, p) in law.masses {
            if k <= k_max {
                let e = sums.entry(k).or_insert_with(S::zero);
                *e = e.clone() + p;
            } else {
                sink = sink + p;
            }
        }
    }
    let inv_t = S::ratio(1, t);
    let entries: std::collections::BTreeMap<u64, S> = (m as u64..=k_max)
        .map(|k| {
            let v = sums.remove(&k).unwrap_or_else(S::zero);
            (k, v * inv_t.clone())
        })
        .collect();
    Ok(NetworkDegree {
        t,
        m,
        k_max,
        dist: DegreeDistribution::new(DistributionKind::Probability, entries),
        truncated_mass: sink * inv_t,
    })
}
