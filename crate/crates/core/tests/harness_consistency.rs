//! Statistical behavior of the replica harness against the exact
//! finite-T law.

use lcd_core::exact::network_degree;
use lcd_core::harness::run_replicas;
use lcd_core::process::ProcessParams;
use lcd_core::registry::DynamicProcess;
use lcd_core::theory;

fn max_abs_dev(
    report: &lcd_core::harness::ReplicaReport,
    exact: &lcd_core::DegreeDistribution<f64>,
) -> f64 {
    exact
        .entries
        .iter()
        .map(|(&k, &p)| (report.mean_frequency(k) - p).abs())
        .fold(0.0, f64::max)
}

#[test]
fn error_shrinks_with_replica_count() {
    let n = 1_000u64;
    let exact = network_degree::<f64>(n, 1, 40).unwrap();
    // Median over 5 meta-repeats of the max deviation, per replica count.
    let mut medians = Vec::new();
    for &replicas in &[10u64, 100, 1000] {
        let mut devs: Vec<f64> = (0..5)
            .map(|rep| {
                let params = ProcessParams::new(1, n, 1000 * replicas + rep);
                let report = run_replicas(&params, replicas, &DynamicProcess).unwrap();
                max_abs_dev(&report, &exact.dist)
            })
            .collect();
        devs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        medians.push(devs[2]);
    }
    assert!(
        medians[0] >= medians[1] && medians[1] >= medians[2],
        "medians not nonincreasing: {medians:?}"
    );
}

#[test]
fn finite_size_bias_favors_exact_over_theory() {
    // At n = 10^3 the empirical frequency of the minimum degree sits
    // closer to the exact P(m, T) than to the asymptotic theory.
    let n = 1_000u64;
    let m = 1u32;
    let exact = network_degree::<f64>(n, m, 40).unwrap();
    let params = ProcessParams::new(m, n, 7);
    // The exact-vs-theory gap at T = 10^3 is ~7e-4; enough replicas to
    // push the standard error of the mean frequency well below it.
    let report = run_replicas(&params, 20_000, &DynamicProcess).unwrap();
    let emp = report.mean_frequency(m as u64);
    let p_exact = exact.dist.value(m as u64);
    let p_theory: f64 = theory::closed_form(m as u64, m).unwrap();
    assert!(
        (emp - p_exact).abs() < (emp - p_theory).abs(),
        "emp = {emp}, exact = {p_exact}, theory = {p_theory}"
    );
}
