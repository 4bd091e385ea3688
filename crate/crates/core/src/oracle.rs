//! Brute-force ground truth at tiny sizes: exhaustive enumeration of
//! every attachment trajectory and of every chord pairing, in exact
//! rational arithmetic. The two enumerations must produce identical laws
//! — the strongest correctness statement for the static description —
//! and their marginals pin down the exact engine.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::error::{guard, invalid, Result};
use crate::pairing::{pairing_to_graph, Pairing};
use crate::scalar::Scalar;

/// Joint law of the final coarse degree sequence `(d_1, ..., d_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryLaw {
    pub m: u32,
    /// Coarse vertex count (the horizon T).
    pub n: u64,
    pub law: BTreeMap<Vec<u32>, BigRational>,
}

impl TrajectoryLaw {
    pub fn total(&self) -> BigRational {
        self.law.values().cloned().sum()
    }

    /// Marginal `P(k, I, T)` of vertex `I` (1-based).
    pub fn marginal(&self, k: u64, vertex: u64) -> BigRational {
        let idx = (vertex - 1) as usize;
        self.law
            .iter()
            .filter(|(seq, _)| seq[idx] as u64 == k)
            .map(|(_, p)| p.clone())
            .sum()
    }

    /// Full degree law of one vertex.
    pub fn vertex_law(&self, vertex: u64) -> BTreeMap<u64, BigRational> {
        let idx = (vertex - 1) as usize;
        let mut out: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (seq, p) in &self.law {
            let k = seq[idx] as u64;
            let e = out.entry(k).or_insert_with(<BigRational as Scalar>::zero);
            *e = e.clone() + p.clone();
        }
        out
    }
}

/// Guard shared by both enumerations: at most 12 fine edges.
const MAX_FINE_STEPS: u64 = 12;

/// Depth-first enumeration of every attachment choice of the dynamic
/// process, aggregated to the coarse degree-sequence law.
pub fn enumerate_process(m: u32, t: u64) -> Result<TrajectoryLaw> {
    if m < 1 || t < 1 {
        return Err(invalid("need m >= 1 and T >= 1"));
    }
    let fine_steps = m as u64 * t;
    if fine_steps > MAX_FINE_STEPS {
        return Err(guard(format!(
            "enumerate_process: m*T = {fine_steps} fine steps exceeds the limit of {MAX_FINE_STEPS}"
        )));
    }
    let mut law = BTreeMap::new();
    let mut degrees: Vec<u32> = Vec::new();
    dfs_process(
        &mut degrees,
        fine_steps,
        <BigRational as Scalar>::one(),
        m,
        &mut law,
    );
    Ok(TrajectoryLaw { m, n: t, law })
}

fn dfs_process(
    degrees: &mut Vec<u32>,
    steps_left: u64,
    prob: BigRational,
    m: u32,
    law: &mut BTreeMap<Vec<u32>, BigRational>,
) {
    if steps_left == 0 {
        let coarse: Vec<u32> = degrees
            .chunks(m as usize)
            .map(|c| c.iter().sum())
            .collect();
        let e = law.entry(coarse).or_insert_with(<BigRational as Scalar>::zero);
        *e = e.clone() + prob;
        return;
    }
    let s = degrees.len() as u64 + 1; // this fine step, 1-based
    let den = 2 * s - 1;
    // Attach to an existing fine vertex v with weight d(v), or loop.
    for v in 0..degrees.len() {
        let d = degrees[v];
        if d == 0 {
            continue;
        }
        let p = prob.clone() * <BigRational as Scalar>::ratio(d as u64, den);
        degrees[v] += 1;
        degrees.push(1);
        dfs_process(degrees, steps_left - 1, p, m, law);
        degrees.pop();
        degrees[v] -= 1;
    }
    let p = prob * <BigRational as Scalar>::ratio(1, den);
    degrees.push(2);
    dfs_process(degrees, steps_left - 1, p, m, law);
    degrees.pop();
}

/// Iterate all `(2mn-1)!!` perfect matchings with uniform weight, map
/// each through the chord-diagram construction, and aggregate the same
/// law as [`enumerate_process`].
pub fn enumerate_pairings(n: u64, m: u32) -> Result<TrajectoryLaw> {
    if m < 1 || n < 1 {
        return Err(invalid("need m >= 1 and n >= 1"));
    }
    let points = 2 * m as u64 * n;
    if points > MAX_FINE_STEPS {
        return Err(guard(format!(
            "enumerate_pairings: 2mn = {points} points exceeds the limit of {MAX_FINE_STEPS}"
        )));
    }
    let count = double_factorial(points - 1);
    let weight = BigRational::new(1.into(), count.into());

    let mut law = BTreeMap::new();
    let mut partner = vec![u32::MAX; points as usize];
    dfs_pairings(&mut partner, m, weight, &mut law)?;
    Ok(TrajectoryLaw { m, n, law })
}

fn dfs_pairings(
    partner: &mut Vec<u32>,
    m: u32,
    weight: BigRational,
    law: &mut BTreeMap<Vec<u32>, BigRational>,
) -> Result<()> {
    let first_free = partner.iter().position(|&p| p == u32::MAX);
    let Some(a) = first_free else {
        let graph = pairing_to_graph(
            &Pairing {
                partner: partner.clone(),
            },
            m,
        )?;
        let e = law
            .entry(graph.degrees)
            .or_insert_with(<BigRational as Scalar>::zero);
        *e = e.clone() + weight;
        return Ok(());
    };
    for b in a + 1..partner.len() {
        if partner[b] != u32::MAX {
            continue;
        }
        partner[a] = b as u32;
        partner[b] = a as u32;
        dfs_pairings(partner, m, weight.clone(), law)?;
        partner[a] = u32::MAX;
        partner[b] = u32::MAX;
    }
    Ok(())
}

fn double_factorial(n: u64) -> u64 {
    let mut acc = 1u64;
    let mut i = n;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: u64, d: u64) -> BigRational {
        <BigRational as Scalar>::ratio(n, d)
    }

    #[test]
    fn process_m1_t1() {
        let law = enumerate_process(1, 1).unwrap();
        assert_eq!(law.law.len(), 1);
        assert_eq!(law.law[&vec![2u32]], rat(1, 1));
    }

    #[test]
    fn process_m1_t2() {
        let law = enumerate_process(1, 2).unwrap();
        assert_eq!(law.law.len(), 2);
        assert_eq!(law.law[&vec![2u32, 2]], rat(1, 3));
        assert_eq!(law.law[&vec![3u32, 1]], rat(2, 3));
        assert_eq!(law.marginal(1, 2), rat(2, 3));
        assert_eq!(law.total(), rat(1, 1));
    }

    #[test]
    fn pairings_m1_n1_and_n2() {
        let law = enumerate_pairings(1, 1).unwrap();
        assert_eq!(law.law[&vec![2u32]], rat(1, 1));

        let law = enumerate_pairings(2, 1).unwrap();
        assert_eq!(law.law[&vec![2u32, 2]], rat(1, 3));
        assert_eq!(law.law[&vec![3u32, 1]], rat(2, 3));
    }

    #[test]
    fn process_equals_pairings_in_guard() {
        for (m, n) in [(1u32, 1u64), (1, 2), (1, 3), (1, 4), (2, 2), (3, 2), (2, 3)] {
            let a = enumerate_process(m, n).unwrap();
            let b = enumerate_pairings(n, m).unwrap();
            assert_eq!(a.law, b.law, "m={m} n={n}");
            assert_eq!(a.total(), rat(1, 1));
        }
    }

    #[test]
    fn degree_sum_invariant() {
        let law = enumerate_process(2, 3).unwrap();
        for (seq, _) in &law.law {
            let sum: u32 = seq.iter().sum();
            assert_eq!(sum as u64, 2 * 2 * 3);
            assert!(seq.iter().all(|&d| d >= 2));
        }
    }

    #[test]
    fn guard_refuses_large_sizes() {
        assert!(matches!(
            enumerate_process(1, 13),
            Err(crate::error::Error::ResourceGuard(_))
        ));
        assert!(matches!(
            enumerate_pairings(7, 1),
            Err(crate::error::Error::ResourceGuard(_))
        ));
    }
}
