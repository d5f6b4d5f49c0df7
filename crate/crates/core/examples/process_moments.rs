//! State probabilities, means and variances of the three processes.
//!
//! cargo run --example process_moments

use fracbd::processes::{
    death_pmf_table, linear_death_mean, linear_death_var, sublinear_death_mean, sublinear_death_var, yule_mean,
    yule_pmf_table, yule_var,
};

fn main() -> fracbd::Result<()> {
    let (nu, t) = (0.7, 1.5);

    let table = yule_pmf_table(nu, 1.0, t)?;
    println!("Yule, lambda = 1, t = {t}: mean {:.6}, variance {:.6}", yule_mean(nu, 1.0, t)?, yule_var(nu, 1.0, t)?);
    for (i, p) in table.iter().take(5).enumerate() {
        println!("  P(N = {}) = {p:.6}", i + 1);
    }

    let n0 = 20;
    let table = death_pmf_table(nu, 0.5, n0, t)?;
    println!(
        "linear death, mu = 0.5, n0 = {n0}: mean {:.6}, variance {:.6}",
        linear_death_mean(nu, 0.5, n0, t)?,
        linear_death_var(nu, 0.5, n0, t)?
    );
    let mode = table.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
    println!("  most likely population {} with probability {:.6}", mode.0, mode.1);

    println!(
        "sublinear death, mu = 0.5, n0 = {n0}: mean {:.6}, variance {:.6}",
        sublinear_death_mean(nu, 0.5, n0, t)?,
        sublinear_death_var(nu, 0.5, n0, t)?
    );
    Ok(())
}
