//! The JADE coefficients are the orthogonal projection of `f` onto the
//! Chebyshev basis in the weight `sqrt(1 - x^2)`, so the weighted error
//! never rises with N.
//!
//! cargo run --release --example projection_optimality

use jade::density::Density;
use jade::moments::default_precision_digits;
use jade::projection::{implied_coefficients, weighted_l2_error};
use jade::{projection_coefficients, CorpusConfig, CorpusDensity, CorpusId};

fn main() -> jade::Result<()> {
    let d = CorpusDensity::build(CorpusId::Sigmoid, &CorpusConfig::default())?;
    let c = d.expectations(50, default_precision_digits(50))?;
    let implied = implied_coefficients(&c);
    let projected = projection_coefficients(&d, 50)?;
    let gap = implied.iter().zip(&projected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("max |implied - projected| over k <= 50: {gap:.1e}");
    for n in [0, 1, 2, 5, 10, 20, 50] {
        let e = weighted_l2_error(|x| d.pdf(x), &c.truncated(n)?, 4001);
        println!("N = {n:>2}: weighted L2 {e:.6e}");
    }
    Ok(())
}
