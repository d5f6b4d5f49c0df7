//! Evaluates E_{δ,β}(x) and the Mittag-Leffler distribution on a few points.
//!
//! cargo run --example mittag_leffler

use fracbd::{mittag_leffler, ml_cdf, ml_pdf, ml_survival, MlDistribution};

fn main() -> fracbd::Result<()> {
    println!("E_(1,1)(1)    = {}", mittag_leffler(1.0, 1.0, 1.0)?);
    println!("E_(1/2,1)(-1) = {}", mittag_leffler(0.5, 1.0, -1.0)?);
    println!("E_(0.3,0.3)(-1e4) = {:e}", mittag_leffler(0.3, 0.3, -1e4)?);

    let law = MlDistribution::new(0.7, 2.0)?;
    println!("\n{:>8} {:>14} {:>14} {:>14}", "t", "survival", "cdf", "pdf");
    for t in [0.01, 0.1, 1.0, 10.0, 100.0] {
        println!(
            "{t:>8} {:>14.8} {:>14.8} {:>14.8e}",
            ml_survival(law, t)?,
            ml_cdf(law, t)?,
            ml_pdf(law, t)?
        );
    }
    Ok(())
}
