//! Small statistics helpers: chi-square goodness-of-fit and two-sample
//! tests over degree-count histograms, with tail bins merged until the
//! expected count is large enough for the asymptotic test.

use std::collections::BTreeMap;

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{invalid, Result};

/// Minimum expected count per bin; smaller bins are merged into their
/// right neighbor (final leftover merges leftward).
pub const MIN_EXPECTED: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub dof: u64,
    pub p_value: f64,
}

fn chi_p_value(statistic: f64, dof: u64) -> f64 {
    if dof == 0 {
        return 1.0;
    }
    let dist = ChiSquared::new(dof as f64).expect("dof > 0");
    1.0 - dist.cdf(statistic)
}

/// Goodness of fit of observed counts against expected probabilities.
/// `total` is the number of observations; keys present in either map are
/// binned in ascending degree order.
pub fn chi_square_gof(
    observed: &BTreeMap<u64, u64>,
    expected_probs: &BTreeMap<u64, f64>,
    total: u64,
) -> Result<ChiSquareResult> {
    if total == 0 {
        return Err(invalid("empty sample"));
    }
    let keys: Vec<u64> = expected_probs.keys().copied().collect();
    let mut bins: Vec<(f64, f64)> = Vec::new(); // (observed, expected)
    let mut acc_obs = 0.0;
    let mut acc_exp = 0.0;
    for k in keys {
        acc_obs += observed.get(&k).copied().unwrap_or(0) as f64;
        acc_exp += expected_probs[&k] * total as f64;
        if acc_exp >= MIN_EXPECTED {
            bins.push((acc_obs, acc_exp));
            acc_obs = 0.0;
            acc_exp = 0.0;
        }
    }
    if acc_exp > 0.0 || acc_obs > 0.0 {
        match bins.last_mut() {
            Some(last) => {
                last.0 += acc_obs;
                last.1 += acc_exp;
            }
            None => bins.push((acc_obs, acc_exp)),
        }
    }
    if bins.len() < 2 {
        return Err(invalid("fewer than 2 bins after merging"));
    }
    let statistic: f64 = bins
        .iter()
        .map(|(o, e)| {
            let d = o - e;
            d * d / e
        })
        .sum();
    let dof = bins.len() as u64 - 1;
    Ok(ChiSquareResult {
        statistic,
        dof,
        p_value: chi_p_value(statistic, dof),
    })
}

/// Two-sample chi-square test of homogeneity between two count
/// histograms, binning so each pooled expected count is large enough.
pub fn chi_square_two_sample(
    a: &BTreeMap<u64, u64>,
    b: &BTreeMap<u64, u64>,
) -> Result<ChiSquareResult> {
    let n1: u64 = a.values().sum();
    let n2: u64 = b.values().sum();
    if n1 == 0 || n2 == 0 {
        return Err(invalid("empty sample"));
    }
    let keys: std::collections::BTreeSet<u64> = a.keys().chain(b.keys()).copied().collect();

    // Merge so that each bin's pooled count supports the approximation.
    let pooled_min = MIN_EXPECTED * (n1 + n2) as f64 / (n1.min(n2) as f64);
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut acc_a, mut acc_b) = (0.0f64, 0.0f64);
    for k in keys {
        acc_a += a.get(&k).copied().unwrap_or(0) as f64;
        acc_b += b.get(&k).copied().unwrap_or(0) as f64;
        if acc_a + acc_b >= pooled_min {
            bins.push((acc_a, acc_b));
            acc_a = 0.0;
            acc_b = 0.0;
        }
    }
    if acc_a > 0.0 || acc_b > 0.0 {
        if let Some(last) = bins.last_mut() {
            last.0 += acc_a;
            last.1 += acc_b;
        } else {
            bins.push((acc_a, acc_b));
        }
    }
    if bins.len() < 2 {
        return Err(invalid("fewer than 2 bins after merging"));
    }
    let (n1, n2) = (n1 as f64, n2 as f64);
    let r1 = (n2 / n1).sqrt();
    let r2 = (n1 / n2).sqrt();
    let statistic: f64 = bins
        .iter()
        .map(|(oa, ob)| {
            let d = oa * r1 - ob * r2;
            d * d / (oa + ob)
        })
        .sum();
    let dof = bins.len() as u64 - 1;
    Ok(ChiSquareResult {
        statistic,
        dof,
        p_value: chi_p_value(statistic, dof),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gof_zero_when_exact() {
        let mut obs = BTreeMap::new();
        let mut exp = BTreeMap::new();
        for (k, p) in [(1u64, 0.5f64), (2, 0.3), (3, 0.2)] {
            obs.insert(k, (p * 1000.0) as u64);
            exp.insert(k, p);
        }
        let r = chi_square_gof(&obs, &exp, 1000).unwrap();
        assert!(r.statistic < 1e-12);
        assert!((r.p_value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn two_sample_identical_histograms() {
        let mut a = BTreeMap::new();
        for (k, c) in [(1u64, 400u64), (2, 300), (3, 200), (4, 100)] {
            a.insert(k, c);
        }
        let r = chi_square_two_sample(&a, &a.clone()).unwrap();
        assert!(r.statistic < 1e-12);
    }

    #[test]
    fn two_sample_detects_gross_difference() {
        let mut a = BTreeMap::new();
        let mut b = BTreeMap::new();
        for k in 1u64..=5 {
            a.insert(k, 1000);
            b.insert(k, if k == 1 { 3000 } else { 500 });
        }
        let r = chi_square_two_sample(&a, &b).unwrap();
        assert!(r.p_value < 1e-6);
    }

    #[test]
    fn tail_bins_merge() {
        let mut obs = BTreeMap::new();
        let mut exp = BTreeMap::new();
        obs.insert(1, 50);
        obs.insert(2, 48);
        exp.insert(1u64, 0.5f64);
        exp.insert(2, 0.48);
        // 20 tiny tail cells that must merge into the last bin.
        for k in 3..=22u64 {
            obs.insert(k, if k == 3 { 2 } else { 0 });
            exp.insert(k, 0.001);
        }
        let r = chi_square_gof(&obs, &exp, 100).unwrap();
        assert_eq!(r.dof, 1);
        assert!(r.statistic.is_finite());
    }
}
