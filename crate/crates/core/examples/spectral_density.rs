//! Energy distribution of a random state under a random 64x64 Hermitian
//! operator, from the Chebyshev recurrence, against exact diagonalization
//! broadened by a Gaussian kernel.
//!
//! cargo run --release --example spectral_density

use jade::{spectrum_convergence, SpectralProblem, SpectrumOptions};

fn main() -> jade::Result<()> {
    let p = SpectralProblem::random(64, 42)?;
    let run = spectrum_convergence(&p, &SpectrumOptions::default())?;
    let r = &run.report;
    println!("interval [{:.4}, {:.4}], sigma {:.4}, leakage {:.1e}", r.map[0], r.map[1], r.sigma, r.leakage);
    for row in &r.convergence {
        println!("N = {:>3}: L1 {:.3e}, mass {:.12}", row.order, row.metrics.l1, row.mass);
    }
    Ok(())
}
