//! Simulates one path of each process and writes the linear-death trajectory
//! as a plot-ready step function.
//!
//! cargo run --example simulate_paths [out.csv]

use fracbd::processes::{simulate_linear_death, simulate_sublinear_death, simulate_yule, simulate_yule_until};
use fracbd::variates::RandomSource;

fn main() -> fracbd::Result<()> {
    let mut rng = RandomSource::new(7, 0);

    let yule = simulate_yule(0.8, 1.0, 10, &mut rng)?;
    println!("Yule birth times: {:.4?}", yule.event_times);
    let window = simulate_yule_until(0.8, 1.0, 2.0, 10_000, &mut rng)?;
    println!("Yule population at t = 2: {}", window.population_at(2.0));

    let sub = simulate_sublinear_death(0.75, 1.0, 10, &mut rng)?;
    println!("sublinear death extinction time: {:.4}", sub.event_times.last().unwrap());

    let death = simulate_linear_death(0.75, 1.0, 40, &mut rng)?;
    match std::env::args().nth(1) {
        Some(path) => {
            death.write_step_csv(std::fs::File::create(&path)?)?;
            println!("linear death step function written to {path}");
        }
        None => {
            for (t, n) in death.step_function().iter().step_by(5) {
                println!("  t = {t:>10.5}  population {n}");
            }
        }
    }
    Ok(())
}
