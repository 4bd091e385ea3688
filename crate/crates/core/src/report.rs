//! File formats: CSV tables, JSON reports, edge-list dumps.
//!
//! All writers are pure string builders so outputs are byte-for-byte
//! deterministic for fixed inputs. Float values are printed with 17
//! significant digits (round-trip exact for f64).

use num_rational::BigRational;
use serde::Serialize;

use crate::dist::DegreeDistribution;
use crate::harness::{ComparisonReport, ReplicaReport};
use crate::oracle::TrajectoryLaw;
use crate::process::GraphState;
use crate::scalar::{NumericMode, Scalar};

pub const SCHEMA_VERSION: u32 = 1;

/// 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// `k,value` CSV from a float-valued distribution.
pub fn csv_float(dist: &DegreeDistribution<f64>) -> String {
    let mut out = String::from("k,value\n");
    for (k, v) in &dist.entries {
        out.push_str(&format!("{k},{}\n", fmt_f64(*v)));
    }
    out
}

/// `k,numerator,denominator` CSV from a rational-valued distribution.
pub fn csv_rational(dist: &DegreeDistribution<BigRational>) -> String {
    let mut out = String::from("k,numerator,denominator\n");
    for (k, v) in &dist.entries {
        out.push_str(&format!("{k},{},{}\n", v.numer(), v.denom()));
    }
    out
}

/// Comparison summary: `k,empirical,stderr,exact,theory,z_exact,z_theory`.
/// Missing exact values leave their fields empty.
pub fn csv_comparison(report: &ComparisonReport) -> String {
    let mut out = String::from("k,empirical,stderr,exact,theory,z_exact,z_theory\n");
    for row in &report.rows {
        let exact = row.exact.map(fmt_f64).unwrap_or_default();
        let z_exact = row.z_exact.map(fmt_f64).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.k,
            fmt_f64(row.empirical),
            fmt_f64(row.stderr),
            exact,
            fmt_f64(row.theory),
            z_exact,
            fmt_f64(row.z_theory),
        ));
    }
    out
}

/// Edge-list text: one `src dst` pair per line, vertices numbered from 1.
pub fn edge_list(graph: &GraphState) -> String {
    let mut out = String::with_capacity(graph.endpoints.len() * 4);
    for (src, dst) in graph.edges() {
        out.push_str(&format!("{} {}\n", src + 1, dst + 1));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryJson {
    pub k: u64,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numerator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub denominator: Option<String>,
}

/// JSON document for exact network-degree results.
#[derive(Debug, Clone, Serialize)]
pub struct ExactReportJson {
    pub schema_version: u32,
    pub m: u32,
    pub t: u64,
    pub mode: NumericMode,
    pub kmax: u64,
    pub truncated_mass: f64,
    pub entries: Vec<EntryJson>,
    /// Max per-entry gap between the forward and first-passage routes,
    /// present when the route cross-check ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub route_max_discrepancy: Option<f64>,
}

pub fn entries_float(dist: &DegreeDistribution<f64>) -> Vec<EntryJson> {
    dist.entries
        .iter()
        .map(|(&k, &v)| EntryJson {
            k,
            value: v,
            numerator: None,
            denominator: None,
        })
        .collect()
}

pub fn entries_rational(dist: &DegreeDistribution<BigRational>) -> Vec<EntryJson> {
    dist.entries
        .iter()
        .map(|(&k, v)| EntryJson {
            k,
            value: v.to_f64(),
            numerator: Some(v.numer().to_string()),
            denominator: Some(v.denom().to_string()),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoryReportJson {
    pub schema_version: u32,
    pub m: u32,
    pub mode: NumericMode,
    pub kmax: u64,
    /// Exact telescoped tail mass beyond kmax.
    pub truncated_mass: f64,
    pub entries: Vec<EntryJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReplicaReportJson {
    pub schema_version: u32,
    #[serde(flatten)]
    pub report: ReplicaReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReportJson {
    pub schema_version: u32,
    #[serde(flatten)]
    pub report: ComparisonReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct LawEntryJson {
    pub degrees: Vec<u32>,
    pub numerator: String,
    pub denominator: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrajectoryLawJson {
    pub schema_version: u32,
    pub m: u32,
    pub n: u64,
    pub entries: Vec<LawEntryJson>,
}

impl TrajectoryLawJson {
    pub fn from_law(law: &TrajectoryLaw) -> Self {
        TrajectoryLawJson {
            schema_version: SCHEMA_VERSION,
            m: law.m,
            n: law.n,
            entries: law
                .law
                .iter()
                .map(|(seq, p)| LawEntryJson {
                    degrees: seq.clone(),
                    numerator: p.numer().to_string(),
                    denominator: p.denom().to_string(),
                })
                .collect(),
        }
    }
}

/// Pretty JSON with a trailing newline; key order is struct order plus
/// BTreeMap ordering, so output is deterministic.
pub fn to_json_string<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serialization cannot fail");
    s.push('\n');
    s
}
