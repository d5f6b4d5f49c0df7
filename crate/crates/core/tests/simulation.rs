//! Simulated paths checked against the exact state laws.

use fracbd::estimation::{build_design, ls_fit, point_estimates};
use fracbd::montecarlo::{point_study, StudyConfig};
use fracbd::processes::{
    death_pmf_table, linear_death_mean, simulate, simulate_yule_until, sublinear_death_mean, sublinear_death_var,
    yule_mean, yule_pmf, ProcessKind, ProcessType,
};
use fracbd::variates::RandomSource;

fn mean_and_se(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

#[test]
fn yule_population_matches_exact_law() {
    let (nu, lambda, t) = (0.7, 1.0, 1.2);
    let reps = 20_000;
    let sizes: Vec<f64> = (0..reps)
        .map(|r| {
            let mut rng = RandomSource::new(101, r);
            simulate_yule_until(nu, lambda, t, 100_000, &mut rng).unwrap().population_at(t) as f64
        })
        .collect();
    let (m, se) = mean_and_se(&sizes);
    let exact = yule_mean(nu, lambda, t).unwrap();
    assert!((m - exact).abs() < 4.0 * se, "{m} vs {exact} (se {se})");
    for i in 1..=3u64 {
        let p = yule_pmf(nu, lambda, t, i).unwrap();
        let freq = sizes.iter().filter(|&&s| s == i as f64).count() as f64 / reps as f64;
        let se = (p * (1.0 - p) / reps as f64).sqrt();
        assert!((freq - p).abs() < 4.0 * se, "P(N = {i}): {freq} vs {p}");
    }
}

#[test]
fn linear_death_population_matches_exact_law() {
    let (nu, mu, n0, t) = (0.6, 0.8, 12u64, 0.9);
    let process = ProcessKind::linear_death(nu, mu, n0).unwrap();
    let reps = 20_000;
    let sizes: Vec<u64> = (0..reps)
        .map(|r| simulate(&process, n0, &mut RandomSource::new(202, r)).unwrap().population_at(t))
        .collect();
    let table = death_pmf_table(nu, mu, n0, t).unwrap();
    for (k, p) in table.iter().enumerate() {
        let freq = sizes.iter().filter(|&&s| s == k as u64).count() as f64 / reps as f64;
        let se = (p * (1.0 - p) / reps as f64).sqrt().max(1e-4);
        assert!((freq - p).abs() < 4.5 * se, "P(N = {k}): {freq} vs {p}");
    }
    let as_f64: Vec<f64> = sizes.iter().map(|&s| s as f64).collect();
    let (m, se) = mean_and_se(&as_f64);
    let exact = linear_death_mean(nu, mu, n0, t).unwrap();
    assert!((m - exact).abs() < 4.0 * se, "{m} vs {exact}");
}

#[test]
fn sublinear_death_moments() {
    let (nu, mu, n0, t) = (0.45, 0.5, 8u64, 2.0);
    let process = ProcessKind::sublinear_death(nu, mu, n0).unwrap();
    let sizes: Vec<f64> = (0..20_000)
        .map(|r| simulate(&process, n0, &mut RandomSource::new(303, r)).unwrap().population_at(t) as f64)
        .collect();
    let (m, se) = mean_and_se(&sizes);
    let exact = sublinear_death_mean(nu, mu, n0, t).unwrap();
    assert!((m - exact).abs() < 4.0 * se, "{m} vs {exact}");
    let var = sizes.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (sizes.len() as f64 - 1.0);
    let exact_var = sublinear_death_var(nu, mu, n0, t).unwrap();
    assert!((var - exact_var).abs() < 0.05 * exact_var, "{var} vs {exact_var}");
}

#[test]
fn classical_limit_residual_estimate() {
    let config = StudyConfig { reps: 50, seed: 9, ..StudyConfig::new(ProcessType::Yule, 1.0, 1.0, vec![10_000]) };
    let r = point_study(&config).unwrap();
    let m = r.cell("nu_res", 10_000).unwrap().mean.unwrap();
    assert!((m - 1.0).abs() < 0.01, "{m}");
}

#[test]
fn death_estimators_are_consistent() {
    for kind in [ProcessType::LinearDeath, ProcessType::SublinearDeath] {
        let process = ProcessKind::new(kind, 0.7, 0.3, 3000).unwrap();
        let path = simulate(&process, 3000, &mut RandomSource::new(404, 0)).unwrap();
        let p = point_estimates(&ls_fit(&build_design(&path).unwrap()).unwrap()).unwrap();
        assert!((p.nu_res - 0.7).abs() < 0.04, "{kind}: {}", p.nu_res);
        assert!((p.rate_res / 0.3 - 1.0).abs() < 0.5, "{kind}: {}", p.rate_res);
    }
}
