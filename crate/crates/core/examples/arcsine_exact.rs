//! The arcsine law has `<T_0> = 1` and every higher expectation zero, so
//! JADE recovers it exactly at any order.
//!
//! cargo run --example arcsine_exact

use std::f64::consts::PI;

use jade::{arcsine_moments, jade_density, moments_to_chebyshev};

fn main() -> jade::Result<()> {
    for n in [0, 5, 20, 50] {
        let c = moments_to_chebyshev(&arcsine_moments(n), n)?;
        let worst = (1..200)
            .map(|j| -1.0 + j as f64 / 100.0)
            .map(|x| {
                let exact = 1.0 / (PI * (1.0 - x * x).sqrt());
                (jade_density(&c, x).unwrap() - exact).abs() / exact
            })
            .fold(0.0, f64::max);
        println!("N = {n:>3}: max relative error {worst:.1e}");
    }
    Ok(())
}
