//! `lcd` — file-oriented front end for the preferential-attachment
//! laboratory. Every subcommand is a thin dispatcher into `lcd-core`;
//! no numerical logic lives here.
//!
//! Exit codes (stable contract): 0 success, 1 internal error, 2 usage /
//! invalid argument, 3 resource guard refused the request, 4 comparison
//! band failure.

mod config;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use num_rational::BigRational;

use lcd_core::exact::{default_k_max, network_degree, NetworkDegree};
use lcd_core::harness::{compare_report, derive_seed, run_replicas, ToleranceBands};
use lcd_core::oracle::{enumerate_pairings, enumerate_process};
use lcd_core::registry::{self, network_degree_via_route, FirstPassageRoute};
use lcd_core::report::{
    self, ComparisonReportJson, EntryJson, ExactReportJson, ReplicaReportJson, TheoryReportJson,
    TrajectoryLawJson, SCHEMA_VERSION,
};
use lcd_core::scalar::Scalar;
use lcd_core::{theory, DegreeDistribution, DistributionKind, NumericMode, ProcessParams};

use config::Config;

/// Rational mode and the first-passage route are refused beyond this
/// horizon; both are quadratic-or-worse in T.
const SLOW_MODE_T_LIMIT: u64 = 200;
/// The float forward sweep is O(T^2 * kmax); keep interactive use sane.
const FLOAT_T_LIMIT: u64 = 10_000;
/// Exact reference inside `compare --with-exact` shares the same sweep.
const COMPARE_EXACT_T_LIMIT: u64 = 5_000;

#[derive(Parser)]
#[command(
    name = "lcd",
    version,
    about = "Preferential-attachment graph laboratory: simulation, exact laws, theory, comparisons"
)]
struct Cli {
    /// Optional KEY=VALUE config file; command-line flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded Monte Carlo replicas; write a degree histogram CSV and a
    /// replica report JSON.
    Simulate {
        /// Edges added per vertex.
        #[arg(long)]
        m: Option<u32>,
        /// Number of vertices (the horizon T).
        #[arg(long)]
        n: Option<u64>,
        /// Independent replicas (>= 2); per-replica seeds are derived.
        #[arg(long)]
        replicas: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Generator: dynamic | pairing.
        #[arg(long)]
        generator: Option<String>,
        /// Histogram CSV path (`k,value` = mean frequency); stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Replica report JSON path.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Also dump the edge list of replica 0 (`src dst`, 1-based).
        #[arg(long)]
        edges: Option<PathBuf>,
    },

    /// Exact finite-horizon degree distribution P(k,T).
    Exact {
        #[arg(long)]
        m: Option<u32>,
        /// Horizon (number of vertices).
        #[arg(long = "T")]
        t: Option<u64>,
        /// Degree cutoff; mass beyond it is reported, not lost.
        #[arg(long)]
        kmax: Option<u64>,
        /// float | rational (rational limited to T <= 200).
        #[arg(long)]
        mode: Option<NumericMode>,
        /// Route: forward | first-passage.
        #[arg(long)]
        route: Option<String>,
        /// Compute both routes and report their maximum discrepancy.
        #[arg(long)]
        check_routes: bool,
        /// CSV path (`k,value`, or `k,numerator,denominator` in rational mode).
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON report path.
        #[arg(long)]
        report: Option<PathBuf>,
    },

    /// Asymptotic degree law 2m(m+1)/(k(k+1)(k+2)).
    Theory {
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        kmax: Option<u64>,
        /// float | rational.
        #[arg(long)]
        mode: Option<NumericMode>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },

    /// Monte Carlo vs theory (and optionally the exact law), with PASS/FAIL
    /// bands, a summary CSV, a JSON report and a log-log SVG plot.
    Compare {
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        replicas: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Generator: dynamic | pairing.
        #[arg(long)]
        generator: Option<String>,
        /// Also compute the exact P(k,T) reference (T <= 5000).
        #[arg(long)]
        with_exact: bool,
        /// Cutoff for the exact reference.
        #[arg(long)]
        kmax: Option<u64>,
        /// Allowed |empirical - reference| for k <= dev-kmax.
        #[arg(long)]
        max_abs_dev: Option<f64>,
        #[arg(long)]
        dev_kmax: Option<u64>,
        /// Tail-exponent acceptance band.
        #[arg(long, allow_negative_numbers = true)]
        tail_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        tail_max: Option<f64>,
        /// Log-log fit window.
        #[arg(long)]
        fit_kmin: Option<u64>,
        #[arg(long)]
        fit_kmax: Option<u64>,
        /// Gate on chi-square p-value vs the exact law (requires --with-exact).
        #[arg(long)]
        chi_p_min: Option<f64>,
        /// Summary CSV path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON report path.
        #[arg(long)]
        report: Option<PathBuf>,
        /// SVG plot path.
        #[arg(long)]
        svg: Option<PathBuf>,
    },

    /// Exhaustive small-case law of the final degree sequence, as JSON.
    Enumerate {
        #[arg(long)]
        m: Option<u32>,
        /// Horizon (number of vertices).
        #[arg(long = "T")]
        t: Option<u64>,
        /// Enumerate uniform pairings instead of process trajectories.
        #[arg(long)]
        pairings: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn usage_err(msg: String) -> anyhow::Error {
    anyhow::Error::new(lcd_core::Error::InvalidArgument(msg))
}

fn guard_err(msg: String) -> anyhow::Error {
    anyhow::Error::new(lcd_core::Error::ResourceGuard(msg))
}

fn require_positive(flag: &str, value: u64) -> Result<()> {
    if value == 0 {
        return Err(usage_err(format!("--{flag} must be >= 1")));
    }
    Ok(())
}

/// Write to the path, or to stdout when no path was given.
fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, text)
                .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", p.display()))?;
            eprintln!("wrote {}", p.display());
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `<stem>.<label>.<ext>` next to `path`; used for secondary outputs.
fn sibling(path: &Path, label: &str) -> PathBuf {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("csv");
    path.with_extension(format!("{label}.{ext}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err.downcast_ref::<lcd_core::Error>() {
                Some(lcd_core::Error::InvalidArgument(_)) => 2,
                Some(lcd_core::Error::ResourceGuard(_)) => 3,
                None => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = Config::load(cli.config.as_deref())?;
    match cli.command {
        Command::Simulate {
            m,
            n,
            replicas,
            seed,
            generator,
            out,
            report,
            edges,
        } => cmd_simulate(&cfg, m, n, replicas, seed, generator, out, report, edges),
        Command::Exact {
            m,
            t,
            kmax,
            mode,
            route,
            check_routes,
            out,
            report,
        } => cmd_exact(&cfg, m, t, kmax, mode, route, check_routes, out, report),
        Command::Theory {
            m,
            kmax,
            mode,
            out,
            report,
        } => cmd_theory(&cfg, m, kmax, mode, out, report),
        Command::Compare {
            m,
            n,
            replicas,
            seed,
            generator,
            with_exact,
            kmax,
            max_abs_dev,
            dev_kmax,
            tail_min,
            tail_max,
            fit_kmin,
            fit_kmax,
            chi_p_min,
            out,
            report,
            svg,
        } => cmd_compare(
            &cfg,
            m,
            n,
            replicas,
            seed,
            generator,
            with_exact,
            kmax,
            [max_abs_dev, tail_min, tail_max, chi_p_min],
            [dev_kmax, fit_kmin, fit_kmax],
            out,
            report,
            svg,
        ),
        Command::Enumerate { m, t, pairings, out } => cmd_enumerate(&cfg, m, t, pairings, out),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    cfg: &Config,
    m: Option<u32>,
    n: Option<u64>,
    replicas: Option<u64>,
    seed: Option<u64>,
    generator: Option<String>,
    out: Option<PathBuf>,
    report_path: Option<PathBuf>,
    edges: Option<PathBuf>,
) -> Result<ExitCode> {
    let m: u32 = cfg.need(m, "m")?;
    let n: u64 = cfg.need(n, "n")?;
    require_positive("m", m as u64)?;
    require_positive("n", n)?;
    let replicas: u64 = cfg.pick(replicas, "replicas", 2)?;
    let seed: u64 = cfg.pick(seed, "seed", 0)?;
    let gen_name: String = cfg.pick(generator, "generator", "dynamic".to_string())?;
    let generator = registry::generator(&gen_name)?;

    let params = ProcessParams::new(m, n, seed);
    let report = run_replicas(&params, replicas, generator)?;
    eprintln!(
        "simulate: {} replicas of {} (m={m}, n={n}, seed={seed}) in {:.2}s",
        replicas, gen_name, report.duration_secs
    );

    let mean_dist = DegreeDistribution::new(
        DistributionKind::Frequency,
        report.per_k.iter().map(|(&k, s)| (k, s.mean)).collect(),
    );
    emit(out.as_deref(), &report::csv_float(&mean_dist))?;
    if let Some(p) = report_path {
        let doc = ReplicaReportJson {
            schema_version: SCHEMA_VERSION,
            report: report.clone(),
        };
        emit(Some(&p), &report::to_json_string(&doc))?;
    }
    if let Some(p) = edges {
        let mut rp = params;
        rp.seed = derive_seed(seed, 0);
        let graph = generator.generate(&rp)?;
        emit(Some(&p), &report::edge_list(&graph))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn exact_network<S: Scalar>(
    t: u64,
    m: u32,
    k_max: u64,
    route_name: &str,
) -> Result<NetworkDegree<S>> {
    match route_name {
        // The capped forward sweep is the fast implementation of the
        // forward route.
        "forward" => Ok(network_degree::<S>(t, m, k_max)?),
        "first-passage" | "fp" => Ok(network_degree_via_route::<S>(
            t,
            m,
            k_max,
            &FirstPassageRoute,
        )?),
        other => Err(usage_err(format!(
            "unknown exact route `{other}` (available: forward, first-passage)"
        ))),
    }
}

fn max_entry_gap<S: Scalar>(a: &NetworkDegree<S>, b: &NetworkDegree<S>) -> f64 {
    let mut gap: f64 = (a.truncated_mass.to_f64() - b.truncated_mass.to_f64()).abs();
    for (k, va) in &a.dist.entries {
        let vb = b.dist.value(*k);
        gap = gap.max((va.to_f64() - vb.to_f64()).abs());
    }
    gap
}

#[allow(clippy::too_many_arguments)]
fn cmd_exact(
    cfg: &Config,
    m: Option<u32>,
    t: Option<u64>,
    kmax: Option<u64>,
    mode: Option<NumericMode>,
    route: Option<String>,
    check_routes: bool,
    out: Option<PathBuf>,
    report_path: Option<PathBuf>,
) -> Result<ExitCode> {
    let m: u32 = cfg.need(m, "m")?;
    let t: u64 = cfg.need(t, "T")?;
    require_positive("m", m as u64)?;
    require_positive("T", t)?;
    let kmax: u64 = cfg.pick(kmax, "kmax", default_k_max(m))?;
    let mode: NumericMode = cfg.pick(mode, "mode", NumericMode::Float64)?;
    let route: String = cfg.pick(route, "route", "forward".to_string())?;
    let check_routes: bool =
        cfg.pick(if check_routes { Some(true) } else { None }, "check-routes", false)?;
    if kmax < m as u64 {
        return Err(usage_err(format!("--kmax must be >= m = {m}")));
    }

    if mode == NumericMode::Rational && t > SLOW_MODE_T_LIMIT {
        return Err(guard_err(format!(
            "rational mode is limited to T <= {SLOW_MODE_T_LIMIT} (got T = {t})"
        )));
    }
    if (route != "forward" || check_routes) && t > SLOW_MODE_T_LIMIT {
        return Err(guard_err(format!(
            "the first-passage route is limited to T <= {SLOW_MODE_T_LIMIT} (got T = {t})"
        )));
    }
    if t > FLOAT_T_LIMIT {
        return Err(guard_err(format!(
            "exact computation is limited to T <= {FLOAT_T_LIMIT} (got T = {t})"
        )));
    }

    // (primary csv, secondary csv, entries, truncated mass, discrepancy)
    struct Outputs {
        csv: String,
        csv_alt: Option<String>,
        entries: Vec<EntryJson>,
        truncated_mass: f64,
        discrepancy: Option<f64>,
    }

    let outputs = match mode {
        NumericMode::Float64 => {
            let primary = exact_network::<f64>(t, m, kmax, &route)?;
            let (csv_alt, discrepancy) = if check_routes {
                let alt_route = if route == "forward" { "first-passage" } else { "forward" };
                let alt = exact_network::<f64>(t, m, kmax, alt_route)?;
                (
                    Some(report::csv_float(&alt.dist)),
                    Some(max_entry_gap(&primary, &alt)),
                )
            } else {
                (None, None)
            };
            Outputs {
                csv: report::csv_float(&primary.dist),
                csv_alt,
                entries: report::entries_float(&primary.dist),
                truncated_mass: primary.truncated_mass,
                discrepancy,
            }
        }
        NumericMode::Rational => {
            let primary = exact_network::<BigRational>(t, m, kmax, &route)?;
            let (csv_alt, discrepancy) = if check_routes {
                let alt_route = if route == "forward" { "first-passage" } else { "forward" };
                let alt = exact_network::<BigRational>(t, m, kmax, alt_route)?;
                // Exact arithmetic: any nonzero gap is a real route split.
                let gap = if primary.dist.entries == alt.dist.entries
                    && primary.truncated_mass == alt.truncated_mass
                {
                    0.0
                } else {
                    max_entry_gap(&primary, &alt)
                };
                (Some(report::csv_rational(&alt.dist)), Some(gap))
            } else {
                (None, None)
            };
            Outputs {
                csv: report::csv_rational(&primary.dist),
                csv_alt,
                entries: report::entries_rational(&primary.dist),
                truncated_mass: primary.truncated_mass.to_f64(),
                discrepancy,
            }
        }
    };

    emit(out.as_deref(), &outputs.csv)?;
    if let (Some(alt), Some(p)) = (&outputs.csv_alt, &out) {
        emit(Some(&sibling(p, "first-passage")), alt)?;
    }
    if let Some(d) = outputs.discrepancy {
        eprintln!("route cross-check: max discrepancy {}", report::fmt_f64(d));
    }
    if let Some(p) = report_path {
        let doc = ExactReportJson {
            schema_version: SCHEMA_VERSION,
            m,
            t,
            mode,
            kmax,
            truncated_mass: outputs.truncated_mass,
            entries: outputs.entries,
            route_max_discrepancy: outputs.discrepancy,
        };
        emit(Some(&p), &report::to_json_string(&doc))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_theory(
    cfg: &Config,
    m: Option<u32>,
    kmax: Option<u64>,
    mode: Option<NumericMode>,
    out: Option<PathBuf>,
    report_path: Option<PathBuf>,
) -> Result<ExitCode> {
    let m: u32 = cfg.need(m, "m")?;
    require_positive("m", m as u64)?;
    let kmax: u64 = cfg.pick(kmax, "kmax", default_k_max(m))?;
    let mode: NumericMode = cfg.pick(mode, "mode", NumericMode::Float64)?;
    if kmax < m as u64 {
        return Err(usage_err(format!("--kmax must be >= m = {m}")));
    }

    let (csv, entries, truncated_mass) = match mode {
        NumericMode::Float64 => {
            let table = theory::recursion_table::<f64>(m, kmax)?;
            (
                report::csv_float(&table),
                report::entries_float(&table),
                theory::tail_mass::<f64>(kmax, m),
            )
        }
        NumericMode::Rational => {
            let table = theory::recursion_table::<BigRational>(m, kmax)?;
            (
                report::csv_rational(&table),
                report::entries_rational(&table),
                theory::tail_mass::<BigRational>(kmax, m).to_f64(),
            )
        }
    };

    emit(out.as_deref(), &csv)?;
    if let Some(p) = report_path {
        let doc = TheoryReportJson {
            schema_version: SCHEMA_VERSION,
            m,
            mode,
            kmax,
            truncated_mass,
            entries,
        };
        emit(Some(&p), &report::to_json_string(&doc))?;
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_compare(
    cfg: &Config,
    m: Option<u32>,
    n: Option<u64>,
    replicas: Option<u64>,
    seed: Option<u64>,
    generator: Option<String>,
    with_exact: bool,
    kmax: Option<u64>,
    float_bands: [Option<f64>; 4],
    int_bands: [Option<u64>; 3],
    out: Option<PathBuf>,
    report_path: Option<PathBuf>,
    svg_path: Option<PathBuf>,
) -> Result<ExitCode> {
    let [max_abs_dev, tail_min, tail_max, chi_p_min] = float_bands;
    let [dev_kmax, fit_kmin, fit_kmax] = int_bands;

    let m: u32 = cfg.need(m, "m")?;
    let n: u64 = cfg.need(n, "n")?;
    require_positive("m", m as u64)?;
    require_positive("n", n)?;
    let replicas: u64 = cfg.pick(replicas, "replicas", 10)?;
    let seed: u64 = cfg.pick(seed, "seed", 0)?;
    let gen_name: String = cfg.pick(generator, "generator", "dynamic".to_string())?;
    let with_exact: bool =
        cfg.pick(if with_exact { Some(true) } else { None }, "with-exact", false)?;
    let kmax: u64 = cfg.pick(kmax, "kmax", default_k_max(m))?;

    let defaults = ToleranceBands::default();
    let bands = ToleranceBands {
        max_abs_dev: cfg.pick(max_abs_dev, "max-abs-dev", defaults.max_abs_dev)?,
        dev_k_max: cfg.pick(dev_kmax, "dev-kmax", defaults.dev_k_max)?,
        tail_slope_min: cfg.pick(tail_min, "tail-min", defaults.tail_slope_min)?,
        tail_slope_max: cfg.pick(tail_max, "tail-max", defaults.tail_slope_max)?,
        fit_k_min: cfg.pick(fit_kmin, "fit-kmin", defaults.fit_k_min)?,
        fit_k_max: cfg.pick(fit_kmax, "fit-kmax", defaults.fit_k_max)?,
        chi_p_min: cfg.opt(chi_p_min, "chi-p-min")?,
    };
    if bands.chi_p_min.is_some() && !with_exact {
        return Err(usage_err(
            "--chi-p-min gates against the exact law and requires --with-exact".into(),
        ));
    }

    let generator = registry::generator(&gen_name)?;
    let params = ProcessParams::new(m, n, seed);
    let empirical = run_replicas(&params, replicas, generator)?;
    eprintln!(
        "compare: {replicas} replicas of {gen_name} (m={m}, n={n}, seed={seed}) in {:.2}s",
        empirical.duration_secs
    );

    let exact = if with_exact {
        if n > COMPARE_EXACT_T_LIMIT {
            return Err(guard_err(format!(
                "--with-exact is limited to n <= {COMPARE_EXACT_T_LIMIT} (got n = {n})"
            )));
        }
        Some(network_degree::<f64>(n, m, kmax)?.dist)
    } else {
        None
    };

    let cmp = compare_report(&empirical, exact.as_ref(), m, &bands)?;

    emit(out.as_deref(), &report::csv_comparison(&cmp))?;
    if let Some(p) = report_path {
        let doc = ComparisonReportJson {
            schema_version: SCHEMA_VERSION,
            report: cmp.clone(),
        };
        emit(Some(&p), &report::to_json_string(&doc))?;
    }
    if let Some(p) = svg_path {
        let mut series = vec![svg::Series {
            name: "empirical".into(),
            color: "#d62728",
            points: cmp
                .rows
                .iter()
                .filter(|r| r.empirical > 0.0)
                .map(|r| (r.k as f64, r.empirical))
                .collect(),
        }];
        if exact.is_some() {
            series.push(svg::Series {
                name: "exact".into(),
                color: "#2ca02c",
                points: cmp
                    .rows
                    .iter()
                    .filter_map(|r| r.exact.map(|e| (r.k as f64, e)))
                    .filter(|&(_, v)| v > 0.0)
                    .collect(),
            });
        }
        series.push(svg::Series {
            name: "theory".into(),
            color: "#1f77b4",
            points: cmp
                .rows
                .iter()
                .map(|r| (r.k as f64, r.theory))
                .filter(|&(_, v)| v > 0.0)
                .collect(),
        });
        let title = format!("degree distribution, m={m}, n={n}, R={replicas}");
        emit(Some(&p), &svg::log_log_plot(&title, &series))?;
    }

    if let Some(slope) = cmp.tail_exponent {
        println!("tail exponent: {slope:.4}");
    }
    if cmp.pass {
        println!("comparison: PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        for f in &cmp.failures {
            println!("band violation: {f}");
        }
        println!("comparison: FAIL");
        Ok(ExitCode::from(4))
    }
}

fn cmd_enumerate(
    cfg: &Config,
    m: Option<u32>,
    t: Option<u64>,
    pairings: bool,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let m: u32 = cfg.need(m, "m")?;
    let t: u64 = cfg.need(t, "T")?;
    require_positive("m", m as u64)?;
    require_positive("T", t)?;
    let pairings: bool = cfg.pick(if pairings { Some(true) } else { None }, "pairings", false)?;

    let law = if pairings {
        enumerate_pairings(t, m)?
    } else {
        enumerate_process(m, t)?
    };
    let doc = TrajectoryLawJson::from_law(&law);
    emit(out.as_deref(), &report::to_json_string(&doc))?;
    Ok(ExitCode::SUCCESS)
}
