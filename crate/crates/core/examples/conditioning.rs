//! The monomial-to-Chebyshev transform has coefficients of size 2^N, so
//! double-precision moments give garbage at high order. The exact path
//! keeps every `|<T_n>| <= 1`.
//!
//! cargo run --release --example conditioning

use jade::chebyshev::ChebCoeffMatrix;
use jade::moments::moments_to_chebyshev_f64;
use jade::{moments_from_pdf, moments_to_chebyshev, CorpusConfig, CorpusDensity, CorpusId, QuadratureConfig};

fn main() -> jade::Result<()> {
    let d = CorpusDensity::build(CorpusId::AsymUniform, &CorpusConfig::default())?;
    let m = moments_from_pdf(&d, (-1.0, 1.0), 100, QuadratureConfig::with_digits(400))?;
    println!("{:>5} {:>14} {:>16} {:>12}", "N", "log10 amp", "max |<T_n>| f64", "exact");
    for n in [10, 20, 30, 40, 60, 80, 100] {
        let amp = ChebCoeffMatrix::new(n).amplification_log10(n);
        let m = m.truncated(n)?;
        let double = moments_to_chebyshev_f64(&m.values_f64(), n)?;
        let exact = moments_to_chebyshev(&m, n)?;
        let max = |v: &[f64]| v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        println!("{n:>5} {amp:>14.1} {:>16.3e} {:>12.6}", max(&double), max(exact.values()));
    }
    Ok(())
}
