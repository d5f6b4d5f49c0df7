//! Exact state probabilities and moments.
//!
//! Means and variances with closed Mittag-Leffler forms are evaluated directly.
//! Probabilities (and the sublinear moments, whose closed forms are alternating
//! binomial sums) go through the chain inversion in [`super::chain`], which
//! stays accurate for populations in the thousands.

use super::chain::chain_pmf;
use super::ProcessKind;
use crate::error::{Error, Result};
use crate::special::{check_nu, mittag_leffler, ml_pdf};

/// Cumulative mass at which [`yule_pmf_table`] stops.
pub const YULE_TABLE_TOLERANCE: f64 = 1e-10;
/// Largest population listed by [`yule_pmf_table`].
pub const YULE_TABLE_MAX: usize = 100_000;

fn check(nu: f64, rate: f64, t: f64) -> Result<()> {
    check_nu(nu)?;
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(Error::domain(format!("rate must be positive and finite, got {rate}")));
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("time must be finite and non-negative, got {t}")));
    }
    Ok(())
}

fn check_n0(n0: u64) -> Result<()> {
    if n0 == 0 {
        Err(Error::domain("initial population must be positive"))
    } else {
        Ok(())
    }
}

/// `P(N(t) = i)` for the Yule process started from one individual.
pub fn yule_pmf(nu: f64, lambda: f64, t: f64, i: u64) -> Result<f64> {
    check(nu, lambda, t)?;
    if i == 0 {
        return Err(Error::domain("Yule population is at least 1"));
    }
    if nu == 1.0 {
        let q = (-lambda * t).exp();
        return Ok(q * (-(-lambda * t).exp_m1()).powf((i - 1) as f64));
    }
    let rates: Vec<f64> = (1..=i).map(|k| lambda * k as f64).collect();
    Ok(*chain_pmf(nu, &rates, t)?.last().expect("i >= 1"))
}

/// `P(N(t) = i)` for `i = 1, 2, …` (element 0 is `i = 1`), truncated once the
/// listed mass reaches `1 - YULE_TABLE_TOLERANCE` or `YULE_TABLE_MAX` entries.
pub fn yule_pmf_table(nu: f64, lambda: f64, t: f64) -> Result<Vec<f64>> {
    check(nu, lambda, t)?;
    let target = 1.0 - YULE_TABLE_TOLERANCE;
    let mut len = 64usize;
    loop {
        let table: Vec<f64> = if nu == 1.0 {
            let q = (-lambda * t).exp();
            let r = -(-lambda * t).exp_m1();
            let mut p = q;
            (0..len)
                .map(|_| {
                    let v = p;
                    p *= r;
                    v
                })
                .collect()
        } else {
            let rates: Vec<f64> = (1..=len).map(|k| lambda * k as f64).collect();
            chain_pmf(nu, &rates, t)?
        };
        let mut acc = 0.0;
        for (j, p) in table.iter().enumerate() {
            acc += p;
            if acc >= target {
                return Ok(table[..=j].to_vec());
            }
        }
        if len == YULE_TABLE_MAX {
            return Ok(table);
        }
        len = (len * 4).min(YULE_TABLE_MAX);
    }
}

/// Death-chain rates in the order the states are visited, ending with extinction.
fn death_rates(process: &ProcessKind) -> Vec<f64> {
    (0..process.n0)
        .map(|k| process.rate * process.rate_factor(k))
        .chain(std::iter::once(0.0))
        .collect()
}

/// Population distribution of a death process; element `i` is `P(N(t) = i)`.
fn death_table(process: &ProcessKind, t: f64) -> Result<Vec<f64>> {
    let n0 = process.n0 as usize;
    let by_deaths = if process.nu == 1.0 {
        classical_death_table(process, t)
    } else {
        chain_pmf(process.nu, &death_rates(process), t)?
    };
    debug_assert_eq!(by_deaths.len(), n0 + 1);
    Ok(by_deaths.into_iter().rev().collect())
}

/// Exponential-holding-time distributions indexed by the number of deaths.
fn classical_death_table(process: &ProcessKind, t: f64) -> Vec<f64> {
    let n0 = process.n0;
    let q = (-process.rate * t).exp();
    let r = -(-process.rate * t).exp_m1();
    match process.kind {
        // each individual independently survives with probability q
        super::ProcessType::LinearDeath => (0..=n0)
            .map(|k| binomial(n0, k) * r.powi(k as i32) * q.powi((n0 - k) as i32))
            .collect(),
        // the visited rates μ, 2μ, … are those of a Yule process stopped at n0
        _ => (0..=n0)
            .map(|k| if k < n0 { q * r.powi(k as i32) } else { r.powi(n0 as i32) })
            .collect(),
    }
}

fn binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// `P(N(t) = i)` for the linear death process started from `n0`.
pub fn death_pmf(nu: f64, mu: f64, n0: u64, t: f64, i: u64) -> Result<f64> {
    check(nu, mu, t)?;
    check_n0(n0)?;
    if i > n0 {
        return Err(Error::domain(format!("population {i} exceeds the initial size {n0}")));
    }
    Ok(death_pmf_table(nu, mu, n0, t)?[i as usize])
}

/// `P(N(t) = i)` for `i = 0..=n0` under linear death.
pub fn death_pmf_table(nu: f64, mu: f64, n0: u64, t: f64) -> Result<Vec<f64>> {
    check(nu, mu, t)?;
    let process = ProcessKind::linear_death(nu, mu, n0)?;
    death_table(&process, t)
}

pub fn yule_mean(nu: f64, lambda: f64, t: f64) -> Result<f64> {
    check(nu, lambda, t)?;
    mittag_leffler(nu, 1.0, lambda * t.powf(nu))
}

pub fn yule_var(nu: f64, lambda: f64, t: f64) -> Result<f64> {
    check(nu, lambda, t)?;
    let x = lambda * t.powf(nu);
    let e1 = mittag_leffler(nu, 1.0, x)?;
    let e2 = mittag_leffler(nu, 1.0, 2.0 * x)?;
    Ok(2.0 * e2 - e1 - e1 * e1)
}

pub fn linear_death_mean(nu: f64, mu: f64, n0: u64, t: f64) -> Result<f64> {
    check(nu, mu, t)?;
    check_n0(n0)?;
    Ok(n0 as f64 * mittag_leffler(nu, 1.0, -mu * t.powf(nu))?)
}

pub fn linear_death_var(nu: f64, mu: f64, n0: u64, t: f64) -> Result<f64> {
    check(nu, mu, t)?;
    check_n0(n0)?;
    let x = mu * t.powf(nu);
    let e1 = mittag_leffler(nu, 1.0, -x)?;
    let e2 = mittag_leffler(nu, 1.0, -2.0 * x)?;
    let n = n0 as f64;
    Ok((n * (n - 1.0) * e2 + n * e1 - n * n * e1 * e1).max(0.0))
}

fn moments(table: &[f64]) -> (f64, f64) {
    let mean: f64 = table.iter().enumerate().map(|(i, p)| i as f64 * p).sum();
    let var: f64 = table.iter().enumerate().map(|(i, p)| (i as f64 - mean).powi(2) * p).sum();
    (mean, var)
}

pub fn sublinear_death_mean(nu: f64, mu: f64, n0: u64, t: f64) -> Result<f64> {
    check(nu, mu, t)?;
    let process = ProcessKind::sublinear_death(nu, mu, n0)?;
    Ok(moments(&death_table(&process, t)?).0)
}

pub fn sublinear_death_var(nu: f64, mu: f64, n0: u64, t: f64) -> Result<f64> {
    check(nu, mu, t)?;
    let process = ProcessKind::sublinear_death(nu, mu, n0)?;
    Ok(moments(&death_table(&process, t)?).1)
}

/// Density of the `j`-th inter-event time (0-based) of `process`.
pub fn inter_event_pdf(process: &ProcessKind, j: u64, t: f64) -> Result<f64> {
    ml_pdf(process.inter_event_law(j)?, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn choose(n: u64, k: u64) -> f64 {
        binomial(n, k)
    }

    fn ml1(nu: f64, x: f64) -> f64 {
        mittag_leffler(nu, 1.0, x).unwrap()
    }

    // Alternating-sum closed forms, used as an independent route for small sizes.
    fn yule_pmf_alt(nu: f64, l: f64, t: f64, i: u64) -> f64 {
        (1..=i)
            .map(|j| choose(i - 1, j - 1) * if j % 2 == 1 { 1.0 } else { -1.0 } * ml1(nu, -l * j as f64 * t.powf(nu)))
            .sum()
    }

    fn death_pmf_alt(nu: f64, mu: f64, n0: u64, t: f64, i: u64) -> f64 {
        choose(n0, i)
            * (0..=n0 - i)
                .map(|j| {
                    choose(n0 - i, j)
                        * if j % 2 == 0 { 1.0 } else { -1.0 }
                        * ml1(nu, -mu * (i + j) as f64 * t.powf(nu))
                })
                .sum::<f64>()
    }

    fn sublinear_mean_alt(nu: f64, mu: f64, n0: u64, t: f64) -> f64 {
        (1..=n0)
            .map(|k| {
                choose(n0 + 1, k + 1) * if k % 2 == 1 { 1.0 } else { -1.0 } * ml1(nu, -mu * k as f64 * t.powf(nu))
            })
            .sum()
    }

    fn sublinear_var_alt(nu: f64, mu: f64, n0: u64, t: f64) -> f64 {
        let h: f64 = 2.0
            * (n0 + 1) as f64
            * (1..n0)
                .map(|k| {
                    choose(n0, k + 1) / (k + 2) as f64
                        * if k % 2 == 1 { 1.0 } else { -1.0 }
                        * ml1(nu, -mu * k as f64 * t.powf(nu))
                })
                .sum::<f64>();
        let m = sublinear_mean_alt(nu, mu, n0, t);
        h + m - m * m
    }

    #[test]
    fn spec_examples() {
        assert_eq!(yule_pmf(0.7, 1.0, 0.0, 1).unwrap(), 1.0);
        assert!((yule_pmf(1.0, 1.0, 1.0, 2).unwrap() - (-1f64).exp() * (1.0 - (-1f64).exp())).abs() < 1e-15);
        assert_eq!(death_pmf(0.6, 1.0, 5, 0.0, 5).unwrap(), 1.0);
        let want = 3.0 * (-1f64).exp() * (1.0 - (-1f64).exp()).powi(2);
        assert!((death_pmf(1.0, 1.0, 3, 1.0, 1).unwrap() - want).abs() < 1e-15);
        assert!((yule_mean(1.0, 1.0, 1.0).unwrap() - E).abs() < 1e-14);
        assert!((yule_var(1.0, 1.0, 1.0).unwrap() - (E * E - E)).abs() < 1e-13);
    }

    #[test]
    fn yule_truncated_sum_is_one() {
        let s: f64 = (1..=200).map(|i| yule_pmf(0.8, 1.0, 1.0, i).unwrap()).sum();
        assert!((s - 1.0).abs() < 1e-8, "{s}");
    }

    #[test]
    fn death_pmf_sums_to_one() {
        let s: f64 = death_pmf_table(0.7, 2.0, 10, 0.5).unwrap().iter().sum();
        assert!((s - 1.0).abs() < 1e-10, "{s}");
    }

    #[test]
    fn chain_route_matches_alternating_sums() {
        for &nu in &[0.3, 0.6, 0.9] {
            for &t in &[0.2, 1.0, 4.0] {
                for i in 1..=8 {
                    let a = yule_pmf(nu, 0.7, t, i).unwrap();
                    let b = yule_pmf_alt(nu, 0.7, t, i);
                    assert!((a - b).abs() < 1e-10, "yule ν={nu} t={t} i={i}: {a} vs {b}");
                }
                let table = death_pmf_table(nu, 1.3, 8, t).unwrap();
                for i in 0..=8 {
                    let b = death_pmf_alt(nu, 1.3, 8, t, i);
                    assert!((table[i as usize] - b).abs() < 1e-10, "death ν={nu} t={t} i={i}");
                }
                for n0 in [1, 2, 5, 9] {
                    let m = sublinear_death_mean(nu, 0.8, n0, t).unwrap();
                    let v = sublinear_death_var(nu, 0.8, n0, t).unwrap();
                    assert!((m - sublinear_mean_alt(nu, 0.8, n0, t)).abs() < 1e-9, "mean ν={nu} n0={n0}");
                    assert!((v - sublinear_var_alt(nu, 0.8, n0, t)).abs() < 1e-8, "var ν={nu} n0={n0}");
                }
            }
        }
    }

    #[test]
    fn initial_moments() {
        for &nu in &[0.4, 1.0] {
            assert_eq!(linear_death_mean(nu, 1.0, 7, 0.0).unwrap(), 7.0);
            assert_eq!(linear_death_var(nu, 1.0, 7, 0.0).unwrap(), 0.0);
            assert!((sublinear_death_mean(nu, 1.0, 7, 0.0).unwrap() - 7.0).abs() < 1e-12);
            assert!(sublinear_death_var(nu, 1.0, 7, 0.0).unwrap().abs() < 1e-12);
            assert!((sublinear_mean_alt(nu, 1.0, 7, 0.0) - 7.0).abs() < 1e-10);
        }
    }

    #[test]
    fn linear_death_mean_matches_pmf() {
        let table = death_pmf_table(0.65, 0.9, 20, 1.7).unwrap();
        let (m, v) = moments(&table);
        assert!((m - linear_death_mean(0.65, 0.9, 20, 1.7).unwrap()).abs() < 1e-6);
        assert!((v - linear_death_var(0.65, 0.9, 20, 1.7).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn yule_table_mean_matches_closed_form() {
        let table = yule_pmf_table(0.7, 0.5, 1.0).unwrap();
        let m: f64 = table.iter().enumerate().map(|(j, p)| (j + 1) as f64 * p).sum();
        assert!((m - yule_mean(0.7, 0.5, 1.0).unwrap()).abs() < 1e-6);
        let total: f64 = table.iter().sum();
        assert!(total >= 1.0 - 2e-10);
    }

    #[test]
    fn monotone_means() {
        let mut prev_d = f64::INFINITY;
        let mut prev_y = 0.0;
        for i in 0..40 {
            let t = 0.1 * i as f64;
            let d = linear_death_mean(0.6, 1.0, 10, t).unwrap();
            let y = yule_mean(0.6, 1.0, t).unwrap();
            assert!(d <= prev_d && y >= prev_y);
            prev_d = d;
            prev_y = y;
        }
    }

    #[test]
    fn large_population_stays_normalised() {
        let table = death_pmf_table(0.75, 1.0, 400, 0.8).unwrap();
        let s: f64 = table.iter().sum();
        assert!((s - 1.0).abs() < 1e-10);
        let (m, _) = moments(&table);
        assert!((m - linear_death_mean(0.75, 1.0, 400, 0.8).unwrap()).abs() < 1e-8 * 400.0);
    }
}
