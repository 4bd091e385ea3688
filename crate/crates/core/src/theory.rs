//! Stationary degree distribution and its identities.
//!
//! The limit distribution is `P(k) = 2m(m+1) / (k(k+1)(k+2))` for
//! `k >= m`, asymptotically `2 m^2 k^-3`. It satisfies the recursion
//! `P(k) = (k-1)/(k+2) * P(k-1)` seeded by `P(m) = 2/(m+2)`, and the
//! indegree form `α_{m,d} = P(d + m)`. The truncated tail telescopes:
//! `Σ_{k > K} P(k) = m(m+1) / ((K+1)(K+2))`.

use std::collections::BTreeMap;

use crate::dist::{DegreeDistribution, DistributionKind};
use crate::error::{invalid, Result};
use crate::scalar::Scalar;

/// `P(k) = 2m(m+1) / (k(k+1)(k+2))`, `k >= m`.
pub fn closed_form<S: Scalar>(k: u64, m: u32) -> Result<S> {
    if m < 1 {
        return Err(invalid("m must be >= 1"));
    }
    if k < m as u64 {
        return Err(invalid(format!("k = {k} below the minimum degree m = {m}")));
    }
    let m = m as u64;
    Ok(S::ratio(2 * m * (m + 1), k * (k + 1) * (k + 2)))
}

/// Table `P(m..=k_max)` built iteratively from the seed `P(m) = 2/(m+2)`
/// via `P(k) = (k-1)/(k+2) * P(k-1)`.
pub fn recursion_table<S: Scalar>(m: u32, k_max: u64) -> Result<DegreeDistribution<S>> {
    if m < 1 {
        return Err(invalid("m must be >= 1"));
    }
    if k_max < m as u64 {
        return Err(invalid("k_max must be >= m"));
    }
    let mut entries = BTreeMap::new();
    let mut p = S::ratio(2, m as u64 + 2);
    entries.insert(m as u64, p.clone());
    for k in m as u64 + 1..=k_max {
        p = p * S::ratio(k - 1, k + 2);
        entries.insert(k, p.clone());
    }
    Ok(DegreeDistribution::new(
        DistributionKind::Probability,
        entries,
    ))
}

/// Indegree form `α_{m,d} = 2m(m+1) / ((d+m)(d+m+1)(d+m+2))`; equals
/// `closed_form(d + m, m)`.
pub fn indegree_form<S: Scalar>(d: u64, m: u32) -> Result<S> {
    if m < 1 {
        return Err(invalid("m must be >= 1"));
    }
    closed_form::<S>(d + m as u64, m)
}

/// Exact tail mass `Σ_{k > k_max} P(k) = m(m+1) / ((k_max+1)(k_max+2))`.
pub fn tail_mass<S: Scalar>(k_max: u64, m: u32) -> S {
    let m = m as u64;
    S::ratio(m * (m + 1), (k_max + 1) * (k_max + 2))
}

/// Least-squares slope of `log(value)` against `log(k)` over entries with
/// `k_min_fit <= k <= k_max_fit` and positive mass. Needs at least 5
/// such points. For the closed form the slope approaches -3 once the fit
/// window clears the `(k+1)(k+2)` curvature (`k_min_fit >= 10m`).
pub fn tail_exponent_fit(
    dist: &DegreeDistribution<f64>,
    k_min_fit: u64,
    k_max_fit: u64,
) -> Result<f64> {
    let points: Vec<(f64, f64)> = dist
        .entries
        .iter()
        .filter(|(&k, &v)| k >= k_min_fit && k <= k_max_fit && v > 0.0)
        .map(|(&k, &v)| ((k as f64).ln(), v.ln()))
        .collect();
    if points.len() < 5 {
        return Err(invalid(format!(
            "tail fit needs >= 5 positive entries in [{k_min_fit}, {k_max_fit}], found {}",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    Ok((n * sxy - sx * sy) / (n * sxx - sx * sx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Rat = BigRational;

    fn rat(n: u64, d: u64) -> Rat {
        <Rat as Scalar>::ratio(n, d)
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(closed_form::<Rat>(1, 1).unwrap(), rat(2, 3));
        assert_eq!(closed_form::<Rat>(2, 1).unwrap(), rat(1, 6));
        for m in 1..=8u32 {
            assert_eq!(
                closed_form::<Rat>(m as u64, m).unwrap(),
                rat(2, m as u64 + 2)
            );
        }
        assert!(closed_form::<f64>(1, 2).is_err());
    }

    #[test]
    fn recursion_table_values() {
        let t = recursion_table::<Rat>(1, 3).unwrap();
        assert_eq!(t.value(1), rat(2, 3));
        assert_eq!(t.value(2), rat(1, 6));
        assert_eq!(t.value(3), rat(1, 15));
    }

    #[test]
    fn recursion_equals_closed_form() {
        for m in 1..=8u32 {
            let k_max = m as u64 + 200;
            let t = recursion_table::<Rat>(m, k_max).unwrap();
            for k in m as u64..=k_max {
                assert_eq!(t.value(k), closed_form::<Rat>(k, m).unwrap());
            }
        }
    }

    #[test]
    fn indegree_identity() {
        assert_eq!(indegree_form::<Rat>(0, 1).unwrap(), rat(2, 3));
        assert_eq!(indegree_form::<Rat>(0, 2).unwrap(), rat(1, 2));
        for m in 1..=8u32 {
            for d in 0..=100u64 {
                assert_eq!(
                    indegree_form::<Rat>(d, m).unwrap(),
                    closed_form::<Rat>(d + m as u64, m).unwrap()
                );
            }
        }
    }

    #[test]
    fn tail_mass_telescopes_exactly() {
        for m in 1..=4u32 {
            let k_max = m as u64 + 300;
            let table = recursion_table::<Rat>(m, k_max).unwrap();
            let total = table.total_mass() + tail_mass::<Rat>(k_max, m);
            assert_eq!(total, rat(1, 1), "m = {m}");
        }
    }

    #[test]
    fn fit_recovers_minus_three_on_closed_form() {
        let t = recursion_table::<f64>(1, 80).unwrap();
        let slope = tail_exponent_fit(&t, 20, 60).unwrap();
        assert!((slope + 3.0).abs() < 0.1, "slope = {slope}");
    }

    #[test]
    fn fit_exact_on_pure_power_law() {
        let entries: std::collections::BTreeMap<u64, f64> =
            (10u64..=100).map(|k| (k, (k as f64).powi(-3))).collect();
        let d = DegreeDistribution::new(DistributionKind::Probability, entries);
        let slope = tail_exponent_fit(&d, 10, 100).unwrap();
        assert!((slope + 3.0).abs() < 1e-10);
    }

    #[test]
    fn fit_flat_on_uniform() {
        let entries: std::collections::BTreeMap<u64, f64> =
            (10u64..=50).map(|k| (k, 0.02)).collect();
        let d = DegreeDistribution::new(DistributionKind::Probability, entries);
        let slope = tail_exponent_fit(&d, 10, 50).unwrap();
        assert!(slope.abs() < 1e-12);
    }

    #[test]
    fn fit_needs_five_points() {
        let entries: std::collections::BTreeMap<u64, f64> =
            (10u64..=13).map(|k| (k, 0.1)).collect();
        let d = DegreeDistribution::new(DistributionKind::Probability, entries);
        assert!(tail_exponent_fit(&d, 10, 13).is_err());
    }
}
