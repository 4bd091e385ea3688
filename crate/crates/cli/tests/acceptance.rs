//! End-to-end acceptance gates for the whole workspace. Each test covers
//! one numbered criterion and prints a single `criterion N (...): PASS`
//! line (visible with `cargo test --test acceptance -- --nocapture`).

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use num_rational::BigRational;

use lcd_core::exact::{
    degree_prob_fp, degree_prob_forward, degree_upper_bound, insertion_all_loops_prob,
    insertion_distribution, insertion_last_loop_sum, insertion_no_loop_prob, network_degree,
    ForwardTable,
};
use lcd_core::harness::{compare_report, run_replicas, ToleranceBands};
use lcd_core::oracle::{enumerate_pairings, enumerate_process};
use lcd_core::process::{degree_counts, generate, ProcessParams};
use lcd_core::registry::{DynamicProcess, Generator, PairingConstruction};
use lcd_core::scalar::{rel_close, Scalar};
use lcd_core::stats::chi_square_two_sample;
use lcd_core::theory;

type Rat = BigRational;

fn pass(n: u32, name: &str, start: Instant, limit_secs: Option<f64>) {
    let secs = start.elapsed().as_secs_f64();
    if let Some(limit) = limit_secs {
        assert!(
            secs < limit,
            "criterion {n} ({name}) took {secs:.1}s, over the {limit:.0}s budget"
        );
    }
    println!("criterion {n} ({name}): PASS [{secs:.1}s]");
}

#[test]
fn criterion_1_oracle_equality() {
    let start = Instant::now();
    for m in 1..=6u32 {
        for t in 1..=6 / m as u64 {
            let law = enumerate_process(m, t).unwrap();
            for vertex in 1..=t {
                let engine = degree_prob_forward::<Rat>(vertex, t, m).unwrap();
                for k in m as u64..=degree_upper_bound(vertex, t, m) {
                    assert_eq!(
                        law.marginal(k, vertex),
                        engine.mass(k),
                        "m={m} T={t} I={vertex} k={k}"
                    );
                }
            }
        }
    }
    pass(1, "oracle equality, rational", start, Some(10.0));
}

#[test]
fn criterion_2_route_equivalence() {
    let start = Instant::now();
    for m in 1..=3u32 {
        for t in 1..=30u64 {
            for vertex in 1..=t {
                // Rational: exact equality.
                let table = ForwardTable::<Rat>::build(vertex, t, m).unwrap();
                let forward = table.law(t).unwrap().clone();
                for k in m as u64..=degree_upper_bound(vertex, t, m) {
                    let fp = degree_prob_fp::<Rat>(k, vertex, t, m, &table).unwrap();
                    assert_eq!(fp, forward.mass(k), "rational m={m} T={t} I={vertex} k={k}");
                }
                // Float: relative error <= 1e-10.
                let ftable = ForwardTable::<f64>::build(vertex, t, m).unwrap();
                let fforward = ftable.law(t).unwrap().clone();
                for k in m as u64..=degree_upper_bound(vertex, t, m) {
                    let fp = degree_prob_fp::<f64>(k, vertex, t, m, &ftable).unwrap();
                    assert!(
                        rel_close(fp, fforward.mass(k), 1e-10),
                        "float m={m} T={t} I={vertex} k={k}: {fp} vs {}",
                        fforward.mass(k)
                    );
                }
            }
        }
    }
    pass(2, "forward/first-passage route equivalence", start, Some(60.0));
}

#[test]
fn criterion_3_insertion_closed_forms() {
    let start = Instant::now();
    let mut max_interior_gap = 0.0f64;
    for m in 1..=5u32 {
        for vertex in 1..=50u64 {
            let dp = insertion_distribution::<Rat>(vertex, m).unwrap();
            // Endpoints: the no-loop and all-loops closed forms.
            assert_eq!(
                dp.mass(m as u64),
                insertion_no_loop_prob::<Rat>(vertex, m),
                "no-loop m={m} I={vertex}"
            );
            assert_eq!(
                dp.mass(2 * m as u64),
                insertion_all_loops_prob::<Rat>(vertex, m),
                "all-loops m={m} I={vertex}"
            );
            // Interior m < k < 2m: the last-loop decomposition sum.
            for k in m as u64 + 1..2 * m as u64 {
                let closed = insertion_last_loop_sum::<Rat>(k, vertex, m).unwrap();
                let gap = (dp.mass(k).to_f64() - closed.to_f64()).abs();
                max_interior_gap = max_interior_gap.max(gap);
                assert_eq!(dp.mass(k), closed, "interior m={m} I={vertex} k={k}");
            }
        }
    }
    println!("criterion 3: max interior discrepancy = {max_interior_gap:e}");
    pass(3, "insertion-law closed forms", start, None);
}

#[test]
fn criterion_4_dynamic_static_equivalence() {
    let start = Instant::now();
    // Exhaustive: every (m, n) the enumeration guard admits (2mn <= 12).
    for m in 1..=3u32 {
        for n in 1..=6u64 {
            if 2 * m as u64 * n > 12 {
                continue;
            }
            let process = enumerate_process(m, n).unwrap();
            let pairings = enumerate_pairings(n, m).unwrap();
            assert_eq!(process.law, pairings.law, "m={m} n={n}");
        }
    }
    // Statistical: 10^4 runs of each generator at m=1, n=50.
    let runs = 10_000u64;
    let mut dynamic: BTreeMap<u64, u64> = BTreeMap::new();
    let mut paired: BTreeMap<u64, u64> = BTreeMap::new();
    for r in 0..runs {
        let params = ProcessParams::new(1, 50, r);
        for (generator, acc) in [
            (&DynamicProcess as &dyn Generator, &mut dynamic),
            (&PairingConstruction as &dyn Generator, &mut paired),
        ] {
            let g = generator.generate(&params).unwrap();
            for (k, c) in degree_counts(&g) {
                *acc.entry(k).or_insert(0) += c;
            }
        }
    }
    let result = chi_square_two_sample(&dynamic, &paired).unwrap();
    assert!(
        result.p_value > 0.001,
        "chi2 = {:.2}, dof = {}, p = {:.4}",
        result.statistic,
        result.dof,
        result.p_value
    );
    pass(4, "dynamic/static construction equivalence", start, Some(30.0));
}

#[test]
fn criterion_5_finite_horizon_convergence() {
    let start = Instant::now();
    let limit = 2.0 / 3.0;
    let err = |t: u64| -> f64 {
        let nd = network_degree::<f64>(t, 1, 61).unwrap();
        (nd.dist.value(1) - limit).abs()
    };
    let err_200 = err(200);
    let err_2000 = err(2000);
    assert!(err_2000 <= 0.02, "|P(1,2000) - 2/3| = {err_2000}");
    assert!(
        err_2000 < err_200,
        "error not shrinking: {err_2000} at T=2000 vs {err_200} at T=200"
    );
    pass(5, "convergence to the asymptotic law", start, Some(60.0));
}

#[test]
fn criterion_6_monte_carlo_vs_theory() {
    let start = Instant::now();
    let params = ProcessParams::new(1, 100_000, 42);
    let report = run_replicas(&params, 30, &DynamicProcess).unwrap();
    for k in 1u64..=5 {
        let th: f64 = theory::closed_form(k, 1).unwrap();
        let dev = (report.mean_frequency(k) - th).abs();
        assert!(dev <= 0.01, "k={k}: |mean - theory| = {dev}");
    }
    // The default bands encode exactly this criterion: 0.01 for k <= 5 and
    // tail exponent in [-3.2, -2.8] fitted over k in [10, 60].
    let cmp = compare_report(&report, None, 1, &ToleranceBands::default()).unwrap();
    assert!(cmp.pass, "band failures: {:?}", cmp.failures);
    let slope = cmp.tail_exponent.unwrap();
    assert!(
        (-3.2..=-2.8).contains(&slope),
        "tail exponent {slope} outside [-3.2, -2.8]"
    );
    pass(6, "Monte Carlo matches theory", start, Some(120.0));
}

#[test]
fn criterion_7_identities() {
    let start = Instant::now();
    for m in 1..=8u32 {
        for d in 0..=100u64 {
            assert_eq!(
                theory::indegree_form::<Rat>(d, m).unwrap(),
                theory::closed_form::<Rat>(d + m as u64, m).unwrap(),
                "in-degree identity d={d} m={m}"
            );
        }
        let k_max = m as u64 + 200;
        let table = theory::recursion_table::<Rat>(m, k_max).unwrap();
        for k in m as u64..=k_max {
            assert_eq!(
                table.value(k),
                theory::closed_form::<Rat>(k, m).unwrap(),
                "recursion identity k={k} m={m}"
            );
        }
    }
    pass(7, "closed-form identities", start, None);
}

#[test]
fn criterion_8_generator_performance() {
    // `generate` is single-threaded by construction (one RNG stream, one
    // sequential endpoint list).
    let params = ProcessParams::new(2, 5_000_000, 0);
    let start = Instant::now();
    let g = generate(&params).unwrap();
    let secs = start.elapsed().as_secs_f64();
    assert!(secs <= 10.0, "10^7-edge generation took {secs:.1}s");
    assert_eq!(g.endpoints.len() as u64, 2 * 2 * 5_000_000);
    // 4-byte endpoints; even with allocator slack stay under the 16
    // bytes-per-endpoint budget (the degree array is budgeted separately).
    assert!(g.endpoints.capacity() * 4 <= 16 * g.endpoints.len());
    println!("criterion 8: 10^7 edges in {secs:.2}s");
    pass(8, "generator performance floor", start, None);
}

#[test]
fn criterion_9_bitwise_deterministic_outputs() {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_lcd");
    let tmp = tempfile::tempdir().unwrap();

    let run = |dir: &Path| {
        std::fs::create_dir_all(dir).unwrap();
        let sim = Command::new(bin)
            .args([
                "simulate", "--m", "1", "--n", "2000", "--replicas", "8", "--seed", "11",
            ])
            .args(["--out".as_ref(), dir.join("hist.csv").as_os_str()])
            .args(["--report".as_ref(), dir.join("sim.json").as_os_str()])
            .args(["--edges".as_ref(), dir.join("edges.txt").as_os_str()])
            .output()
            .unwrap();
        assert!(sim.status.success(), "{}", String::from_utf8_lossy(&sim.stderr));
        let cmp = Command::new(bin)
            .args([
                "compare", "--m", "1", "--n", "500", "--replicas", "6", "--seed", "3",
                "--with-exact",
            ])
            .args(["--out".as_ref(), dir.join("cmp.csv").as_os_str()])
            .args(["--report".as_ref(), dir.join("cmp.json").as_os_str()])
            .args(["--svg".as_ref(), dir.join("cmp.svg").as_os_str()])
            .output()
            .unwrap();
        // Band verdict (exit 0 or 4) is irrelevant here; only the bytes are.
        assert!(
            matches!(cmp.status.code(), Some(0) | Some(4)),
            "{}",
            String::from_utf8_lossy(&cmp.stderr)
        );
    };

    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    run(&a);
    run(&b);
    for name in ["hist.csv", "sim.json", "edges.txt", "cmp.csv", "cmp.json", "cmp.svg"] {
        let fa = std::fs::read(a.join(name)).unwrap();
        let fb = std::fs::read(b.join(name)).unwrap();
        assert_eq!(fa, fb, "{name} differs between identical runs");
    }
    pass(9, "bitwise-deterministic outputs", start, None);
}
