//! The characteristic function as a Jacobi-Anger sum of Bessel functions,
//! and its inverse Fourier transform back to the density.
//!
//! cargo run --release --example characteristic_function

use jade::characteristic::inverse_ft_consistency;
use jade::moments::default_precision_digits;
use jade::{CharacteristicFunction, CorpusConfig, CorpusDensity, CorpusId, FourierTail, Grid};

fn main() -> jade::Result<()> {
    let d = CorpusDensity::build(CorpusId::BimodalPoly, &CorpusConfig::default())?;
    let c = d.expectations(20, default_precision_digits(20))?;
    let phi = CharacteristicFunction::new(c.clone());
    for t in [0.0, 1.0, 5.0, 20.0] {
        let z = phi.eval(t);
        println!("phi({t:>4}) = {:+.6} {:+.6}i", z.re, z.im);
    }
    let grid = Grid::chebyshev(2001).restricted(0.9);
    for t_max in [100.0, 200.0, 400.0, 800.0] {
        let plain = inverse_ft_consistency(&c, t_max, &grid, FourierTail::Truncated);
        let tail = inverse_ft_consistency(&c, t_max, &grid, FourierTail::Asymptotic);
        println!(
            "t_max {t_max:>5}: max deviation {:.2e} truncated, {:.2e} with asymptotic tail",
            plain.max_deviation, tail.max_deviation
        );
    }
    Ok(())
}
