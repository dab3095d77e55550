//! Moment files store decimal strings, read back as exact rationals.
//!
//! cargo run --example moment_file_roundtrip

use jade::io::{read_moment_file, write_moment_file};
use jade::{moments_to_chebyshev, uniform_moments};

fn main() -> jade::Result<()> {
    let dir = tempfile::tempdir()?;
    let path = dir.path().join("uniform.json");
    let m = uniform_moments(12);
    write_moment_file(&path, &m, 40)?;
    print!("{}", std::fs::read_to_string(&path)?);
    let back = read_moment_file(&path)?;
    println!("precision read back: {:?}", back.precision());
    let c = moments_to_chebyshev(&back, 12)?;
    for (n, v) in c.values().iter().enumerate() {
        // uniform on [-1, 1]: <T_n> = 1 / (1 - n^2) for even n
        let exact = if n % 2 == 0 { 1.0 / (1.0 - (n * n) as f64) } else { 0.0 };
        println!("<T_{n:>2}> = {v:+.17} (exact {exact:+.17})");
    }
    Ok(())
}
