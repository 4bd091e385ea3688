//! Seeded replica orchestration and three-way comparison reports
//! (Monte Carlo vs exact engine vs closed-form theory).
//!
//! Replica `r` runs on its own RNG stream seeded with
//! `splitmix64(seed XOR r * 0x9E3779B97F4A7C15)` (the splitmix64
//! finalizer over a golden-ratio stride), so replicas are independent and
//! the full report is a deterministic function of `(params, R)` no matter
//! how many workers execute them: per-replica histograms are integer
//! counts, collected in replica order and folded sequentially.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::DegreeDistribution;
use crate::error::{guard, invalid, Result};
use crate::process::{degree_counts, ProcessParams};
use crate::registry::Generator;
use crate::stats::{chi_square_gof, ChiSquareResult};
use crate::theory;

/// Cap on `R * m * n` fine edges across a replica batch.
pub const MAX_BATCH_EDGES: u64 = 4_000_000_000;

/// splitmix64 finalizer; the documented replica seed derivation.
pub fn derive_seed(seed: u64, replica: u64) -> u64 {
    let mut z = seed ^ replica.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KStat {
    /// Mean empirical frequency across replicas.
    pub mean: f64,
    /// Sample standard deviation of the per-replica frequency.
    pub stddev: f64,
    /// Standard error of the mean.
    pub stderr: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReplicaReport {
    pub params: ProcessParams,
    pub generator: String,
    pub replicas: u64,
    pub per_k: BTreeMap<u64, KStat>,
    /// Pooled integer degree counts over all replicas.
    pub counts: BTreeMap<u64, u64>,
    /// Wall time; excluded from serialized reports so identical inputs
    /// produce byte-identical files.
    #[serde(skip, default)]
    pub duration_secs: f64,
}

impl ReplicaReport {
    pub fn mean_frequency(&self, k: u64) -> f64 {
        self.per_k.get(&k).map(|s| s.mean).unwrap_or(0.0)
    }

    pub fn total_vertices(&self) -> u64 {
        self.replicas * self.params.n
    }
}

/// Run `replicas` independent generator runs with derived seeds and
/// aggregate degree statistics. Deterministic given `(params, replicas)`
/// and the generator.
pub fn run_replicas(
    params: &ProcessParams,
    replicas: u64,
    generator: &dyn Generator,
) -> Result<ReplicaReport> {
    params.validate()?;
    if replicas < 2 {
        return Err(invalid("replica count must be >= 2"));
    }
    let work = replicas
        .checked_mul(params.m as u64 * params.n)
        .unwrap_or(u64::MAX);
    if work > MAX_BATCH_EDGES {
        return Err(guard(format!(
            "R*m*n = {work} fine edges exceeds the batch limit of {MAX_BATCH_EDGES}"
        )));
    }

    let start = Instant::now();
    let histograms: Vec<Result<BTreeMap<u64, u64>>> = (0..replicas)
        .into_par_iter()
        .map(|r| {
            let mut p = *params;
            p.seed = derive_seed(params.seed, r);
            let graph = generator.generate(&p)?;
            Ok(degree_counts(&graph))
        })
        .collect();

    let n = params.n as f64;
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    let mut sum: BTreeMap<u64, f64> = BTreeMap::new();
    let mut sumsq: BTreeMap<u64, f64> = BTreeMap::new();
    for h in histograms {
        let h = h?;
        for (&k, &c) in &h {
            let f = c as f64 / n;
            *counts.entry(k).or_insert(0) += c;
            *sum.entry(k).or_insert(0.0) += f;
            *sumsq.entry(k).or_insert(0.0) += f * f;
        }
    }

    let r = replicas as f64;
    let per_k: BTreeMap<u64, KStat> = sum
        .iter()
        .map(|(&k, &s)| {
            let mean = s / r;
            let var = ((sumsq[&k] - s * s / r) / (r - 1.0)).max(0.0);
            let stddev = var.sqrt();
            (
                k,
                KStat {
                    mean,
                    stddev,
                    stderr: stddev / r.sqrt(),
                },
            )
        })
        .collect();

    Ok(ReplicaReport {
        params: *params,
        generator: generator.name().to_string(),
        replicas,
        per_k,
        counts,
        duration_secs: start.elapsed().as_secs_f64(),
    })
}

/// Acceptance bands for [`compare_report`]. All thresholds are
/// engineering tolerances; the theory they quantify is asymptotic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceBands {
    /// `|mean frequency - reference|` allowed for `k <= dev_k_max`.
    pub max_abs_dev: f64,
    pub dev_k_max: u64,
    pub tail_slope_min: f64,
    pub tail_slope_max: f64,
    pub fit_k_min: u64,
    pub fit_k_max: u64,
    /// Chi-square non-rejection gate against the exact law, when present.
    pub chi_p_min: Option<f64>,
}

impl Default for ToleranceBands {
    fn default() -> Self {
        ToleranceBands {
            max_abs_dev: 0.01,
            dev_k_max: 5,
            tail_slope_min: -3.2,
            tail_slope_max: -2.8,
            fit_k_min: 10,
            fit_k_max: 60,
            chi_p_min: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub k: u64,
    pub empirical: f64,
    pub stderr: f64,
    pub exact: Option<f64>,
    pub theory: f64,
    pub z_exact: Option<f64>,
    pub z_theory: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub m: u32,
    pub rows: Vec<ComparisonRow>,
    /// Max `|empirical - theory|` over `k ∈ [m, dev_k_max]`.
    pub max_abs_dev_theory: f64,
    /// Max `|empirical - exact|` over the same window, when exact given.
    pub max_abs_dev_exact: Option<f64>,
    /// Against the exact law when present, else against theory
    /// (informational in the latter case: theory ignores finite-T bias).
    pub chi_square: Option<ChiSquareResult>,
    pub tail_exponent: Option<f64>,
    pub bands: ToleranceBands,
    pub pass: bool,
    pub failures: Vec<String>,
}

fn z_score(diff: f64, stderr: f64) -> f64 {
    if stderr > 0.0 {
        diff / stderr
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Compare mean empirical frequencies against the closed-form theory and
/// (optionally) the exact finite-T law, flagging PASS/FAIL per band.
pub fn compare_report(
    empirical: &ReplicaReport,
    exact: Option<&DegreeDistribution<f64>>,
    m: u32,
    bands: &ToleranceBands,
) -> Result<ComparisonReport> {
    if empirical.per_k.is_empty() {
        return Err(invalid("empirical report has empty support"));
    }
    let k_lo = m as u64;
    let k_hi = *empirical.per_k.keys().next_back().unwrap();
    let mut rows = Vec::new();
    let mut max_dev_theory = 0.0f64;
    let mut max_dev_exact: Option<f64> = exact.map(|_| 0.0);
    for k in k_lo..=k_hi.max(bands.dev_k_max) {
        let stat = empirical.per_k.get(&k);
        let emp = stat.map(|s| s.mean).unwrap_or(0.0);
        let stderr = stat.map(|s| s.stderr).unwrap_or(0.0);
        let th: f64 = theory::closed_form(k, m)?;
        let ex = exact.map(|d| d.value(k));
        if k <= bands.dev_k_max {
            max_dev_theory = max_dev_theory.max((emp - th).abs());
            if let (Some(dev), Some(e)) = (max_dev_exact.as_mut(), ex) {
                *dev = dev.max((emp - e).abs());
            }
        }
        rows.push(ComparisonRow {
            k,
            empirical: emp,
            stderr,
            exact: ex,
            theory: th,
            z_exact: ex.map(|e| z_score(emp - e, stderr)),
            z_theory: z_score(emp - th, stderr),
        });
    }

    let mut failures = Vec::new();
    if max_dev_theory > bands.max_abs_dev {
        failures.push(format!(
            "max |empirical - theory| = {max_dev_theory:.6} > {:.6} for k <= {}",
            bands.max_abs_dev, bands.dev_k_max
        ));
    }

    let emp_dist = DegreeDistribution::new(
        crate::dist::DistributionKind::Frequency,
        empirical.per_k.iter().map(|(&k, s)| (k, s.mean)).collect(),
    );
    let tail_exponent = theory::tail_exponent_fit(&emp_dist, bands.fit_k_min, bands.fit_k_max).ok();
    match tail_exponent {
        Some(slope) => {
            if !(bands.tail_slope_min..=bands.tail_slope_max).contains(&slope) {
                failures.push(format!(
                    "tail exponent {slope:.4} outside [{}, {}]",
                    bands.tail_slope_min, bands.tail_slope_max
                ));
            }
        }
        None => failures.push(format!(
            "tail fit impossible: fewer than 5 positive entries in [{}, {}]",
            bands.fit_k_min, bands.fit_k_max
        )),
    }

    let chi_square = {
        let reference: BTreeMap<u64, f64> = match exact {
            Some(d) => d.entries.clone(),
            None => {
                let mut map = BTreeMap::new();
                for k in k_lo..=k_hi {
                    map.insert(k, theory::closed_form(k, m)?);
                }
                map
            }
        };
        chi_square_gof(&empirical.counts, &reference, empirical.total_vertices()).ok()
    };
    if let (Some(p_min), Some(chi), Some(_)) = (bands.chi_p_min, chi_square.as_ref(), exact) {
        if chi.p_value <= p_min {
            failures.push(format!(
                "chi-square vs exact: p = {:.3e} <= {p_min}",
                chi.p_value
            ));
        }
    }

    Ok(ComparisonReport {
        m,
        rows,
        max_abs_dev_theory: max_dev_theory,
        max_abs_dev_exact: max_dev_exact,
        chi_square,
        tail_exponent,
        bands: *bands,
        pass: failures.is_empty(),
        failures,
    })
}
