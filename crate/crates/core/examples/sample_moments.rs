//! JADE from empirical moments of samples drawn on an arbitrary interval.
//!
//! cargo run --release --example sample_moments

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution};

use jade::{jade_density_grid, moments_from_samples, moments_to_chebyshev, rescale_moments, AffineDomainMap, Grid};

fn main() -> jade::Result<()> {
    // Beta(2, 5) stretched onto [0, 10]
    let beta = Beta::new(2.0, 5.0).unwrap();
    let pdf = |x: f64| {
        let u = x / 10.0;
        30.0 * u * (1.0 - u).powi(4) / 10.0
    };
    let map = AffineDomainMap::new(0.0, 10.0)?;
    let grid = Grid::chebyshev(401);
    for count in [1_000, 10_000, 100_000] {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let samples: Vec<f64> = (0..count).map(|_| 10.0 * beta.sample(&mut rng)).collect();
        let m = moments_from_samples(&samples, 8, (0.0, 10.0))?;
        let c = moments_to_chebyshev(&rescale_moments(&m, &map)?, 8)?;
        let est = jade_density_grid(&c, &grid, &map);
        let (x, f) = est.physical();
        let worst = x.iter().zip(&f).filter(|(x, _)| (1.0..9.0).contains(*x)).map(|(x, f)| (f - pdf(*x)).abs()).fold(0.0, f64::max);
        println!("{count:>7} samples: max error on [1, 9] {worst:.3e}");
    }
    Ok(())
}
