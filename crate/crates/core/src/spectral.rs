//! Hermitian operator and state: Hamiltonian moments, Chebyshev
//! expectations by vector recurrence, spectral bounds and the exact
//! broadened energy distribution.

use std::path::Path;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::corpus::GaussianMixture;
use crate::domain::AffineDomainMap;
use crate::error::{Error, Result};
use crate::estimator::{DensityEstimate, Grid, Method};
use crate::moments::{ChebyshevExpectations, MomentVector};
use crate::quadrature::gauss_hermite;
use crate::warning::Warning;

/// Largest operator dimension accepted by default.
pub const DEFAULT_DIMENSION_CAP: usize = 4096;

/// Default fractional widening of the Gershgorin interval.
pub const DEFAULT_SPECTRAL_MARGIN: f64 = 0.05;

const HERMITIAN_TOL: f64 = 1e-12;
const NORM_TOL: f64 = 1e-12;
const IMAG_TOL: f64 = 1e-10;
const ESCAPE_TOL: f64 = 1e-6;

/// Dense Hermitian operator `H` and normalized state `psi`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralProblem {
    dim: usize,
    matrix: Vec<Complex64>,
    state: Vec<Complex64>,
}

/// On-disk layout: row-major `[re, im]` pairs.
#[derive(Debug, Serialize, Deserialize)]
struct SpectralFile {
    dim: usize,
    matrix: Vec<[f64; 2]>,
    state: Vec<[f64; 2]>,
}

impl SpectralProblem {
    pub fn new(dim: usize, matrix: Vec<Complex64>, state: Vec<Complex64>) -> Result<Self> {
        Self::with_cap(dim, matrix, state, DEFAULT_DIMENSION_CAP)
    }

    pub fn with_cap(dim: usize, matrix: Vec<Complex64>, state: Vec<Complex64>, cap: usize) -> Result<Self> {
        if dim > cap {
            return Err(Error::DimensionCap { dim, cap });
        }
        if dim == 0 || matrix.len() != dim * dim {
            return Err(Error::InvalidParameter(format!(
                "matrix has {} entries, expected {dim} x {dim}",
                matrix.len()
            )));
        }
        if state.len() != dim {
            return Err(Error::DimensionMismatch {
                dim,
                state_len: state.len(),
            });
        }
        let mut deviation: f64 = 0.0;
        for i in 0..dim {
            for j in i..dim {
                let d = (matrix[i * dim + j] - matrix[j * dim + i].conj()).norm();
                deviation = deviation.max(d);
            }
        }
        if !(deviation < HERMITIAN_TOL) {
            return Err(Error::NotHermitian { deviation });
        }
        let norm = state.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !((norm - 1.0).abs() < NORM_TOL) {
            return Err(Error::NotNormalized { norm });
        }
        Ok(SpectralProblem { dim, matrix, state })
    }

    /// Diagonal operator with real entries `levels`.
    pub fn diagonal(levels: &[f64], state: Vec<Complex64>) -> Result<Self> {
        let d = levels.len();
        let mut matrix = vec![Complex64::new(0.0, 0.0); d * d];
        for (i, &e) in levels.iter().enumerate() {
            matrix[i * d + i] = Complex64::new(e, 0.0);
        }
        Self::new(d, matrix, state)
    }

    /// Seeded test problem: levels uniform in `[-3, 3]` on the diagonal,
    /// weak complex Gaussian coupling `0.05 (A + A^dagger) / 2`, and a random
    /// normalized complex state.
    pub fn random(dim: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let levels: Vec<f64> = (0..dim).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let mut gauss = || -> Complex64 {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        };
        let a: Vec<Complex64> = (0..dim * dim).map(|_| gauss()).collect();
        let mut state: Vec<Complex64> = (0..dim).map(|_| gauss()).collect();
        let norm = state.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        state.iter_mut().for_each(|z| *z /= norm);

        let mut matrix = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let coupling = 0.025 * (a[i * dim + j] + a[j * dim + i].conj());
                matrix[i * dim + j] = if i == j {
                    Complex64::new(levels[i] + coupling.re, 0.0)
                } else {
                    coupling
                };
            }
        }
        Self::new(dim, matrix, state)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.matrix
    }

    pub fn state(&self) -> &[Complex64] {
        &self.state
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[i * self.dim + j]
    }

    /// `out = (scale H + shift) v`.
    fn apply(&self, v: &[Complex64], scale: f64, shift: f64, out: &mut [Complex64]) {
        for (i, slot) in out.iter_mut().enumerate() {
            let row = &self.matrix[i * self.dim..(i + 1) * self.dim];
            let hv: Complex64 = row.iter().zip(v).map(|(h, x)| h * x).sum();
            *slot = scale * hv + shift * v[i];
        }
    }

    fn overlap(&self, v: &[Complex64]) -> Complex64 {
        self.state.iter().zip(v).map(|(p, x)| p.conj() * x).sum()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SpectralFile = serde_json::from_str(text)?;
        let pair = |p: &[f64; 2]| Complex64::new(p[0], p[1]);
        Self::new(
            file.dim,
            file.matrix.iter().map(pair).collect(),
            file.state.iter().map(pair).collect(),
        )
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Json(j) => Error::Format {
                path: path.to_path_buf(),
                message: format!("line {}, column {}: {j}", j.line(), j.column()),
            },
            other => other,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let pair = |z: &Complex64| [z.re, z.im];
        let file = SpectralFile {
            dim: self.dim,
            matrix: self.matrix.iter().map(pair).collect(),
            state: self.state.iter().map(pair).collect(),
        };
        Ok(serde_json::to_string(&file)?)
    }
}

/// `mu_n = <psi|H^n|psi>` by repeated products `v_n = H v_{n-1}`. The domain
/// attached is the Gershgorin interval.
pub fn hamiltonian_moments(p: &SpectralProblem, order: usize) -> Result<MomentVector> {
    let mut v = p.state.clone();
    let mut next = vec![Complex64::new(0.0, 0.0); p.dim];
    let mut values = Vec::with_capacity(order + 1);
    for n in 0..=order {
        if n > 0 {
            p.apply(&v, 1.0, 0.0, &mut next);
            std::mem::swap(&mut v, &mut next);
        }
        let mu = p.overlap(&v);
        let scale = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);
        if mu.im.abs() > IMAG_TOL * scale {
            return Err(Error::ImaginaryResidue {
                order: n,
                residue: mu.im,
            });
        }
        values.push(mu.re);
    }
    let map = estimate_spectral_bounds(p, 0.0);
    MomentVector::from_f64(&values, (map.lower(), map.upper()))
}

/// `<psi|T_n(H~)|psi>` with `H~ = forward(H)`, by the recurrence
/// `v_{n+1} = 2 H~ v_n - v_{n-1}`.
pub fn hamiltonian_chebyshev_expectations(
    p: &SpectralProblem,
    map: &AffineDomainMap,
    order: usize,
) -> Result<ChebyshevExpectations> {
    let values = chebyshev_recurrence(p, map, 0.0, order)?;
    for (n, v) in values.iter().enumerate() {
        if v.abs() > 1.0 + ESCAPE_TOL {
            return Err(Error::SpectrumEscape { order: n, value: *v });
        }
    }
    Ok(ChebyshevExpectations::new(values))
}

/// Recurrence for `H~ + offset`.
fn chebyshev_recurrence(p: &SpectralProblem, map: &AffineDomainMap, offset: f64, order: usize) -> Result<Vec<f64>> {
    let (s, t) = (map.jacobian(), map.forward(0.0) + offset);
    let dim = p.dim;
    let mut prev = p.state.clone();
    let mut cur = vec![Complex64::new(0.0, 0.0); dim];
    let mut next = vec![Complex64::new(0.0, 0.0); dim];
    let mut values = Vec::with_capacity(order + 1);
    values.push(p.overlap(&prev).re);
    if order == 0 {
        return Ok(values);
    }
    p.apply(&prev, s, t, &mut cur);
    for n in 1..=order {
        let z = p.overlap(&cur);
        if z.im.abs() > IMAG_TOL * z.norm().max(1.0) {
            return Err(Error::ImaginaryResidue {
                order: n,
                residue: z.im,
            });
        }
        values.push(z.re);
        if n == order {
            break;
        }
        p.apply(&cur, 2.0 * s, 2.0 * t, &mut next);
        for (x, y) in next.iter_mut().zip(&prev) {
            *x -= y;
        }
        std::mem::swap(&mut prev, &mut cur);
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(values)
}

/// Chebyshev expectations of the Gaussian-broadened distribution
/// `P = sum_k |gamma_k|^2 N(forward(e_k), sigma^2)`, with `sigma` in mapped
/// units: `<T_n>_P = E_Z <psi|T_n(H~ + sigma Z)|psi>`. The Gauss-Hermite rule
/// is exact because `T_n` is a polynomial.
pub fn broadened_chebyshev_expectations(
    p: &SpectralProblem,
    map: &AffineDomainMap,
    sigma: f64,
    order: usize,
) -> Result<ChebyshevExpectations> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
    }
    let (nodes, weights) = gauss_hermite((order / 2 + 2).max(51));
    let mut acc = vec![0.0; order + 1];
    for (z, w) in nodes.iter().zip(&weights) {
        let v = chebyshev_recurrence(p, map, sigma * z, order)?;
        for (a, x) in acc.iter_mut().zip(v) {
            *a += w * x;
        }
    }
    Ok(ChebyshevExpectations::new(acc))
}

/// Gershgorin interval widened on each side by `margin` times half its
/// width. A zero-width interval is given unit half-width first.
pub fn estimate_spectral_bounds(p: &SpectralProblem, margin: f64) -> AffineDomainMap {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..p.dim {
        let centre = p.entry(i, i).re;
        let radius: f64 = (0..p.dim).filter(|&j| j != i).map(|j| p.entry(i, j).norm()).sum();
        lo = lo.min(centre - radius);
        hi = hi.max(centre + radius);
    }
    if hi <= lo {
        lo -= 1.0;
        hi += 1.0;
    }
    let pad = 0.5 * margin * (hi - lo);
    AffineDomainMap::new(lo - pad, hi + pad).expect("finite Gershgorin bounds")
}

/// Eigenvalues and state weights `|<phi_k|psi>|^2` from a full
/// diagonalization, eigenvalues ascending.
pub fn spectral_decomposition(p: &SpectralProblem) -> Result<(Vec<f64>, Vec<f64>)> {
    let m = DMatrix::from_fn(p.dim, p.dim, |i, j| p.entry(i, j));
    let eig = SymmetricEigen::try_new(m, 1e-15, 0).ok_or(Error::Diagonalization)?;
    let mut pairs: Vec<(f64, f64)> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(k, &e)| {
            let col = eig.eigenvectors.column(k);
            let amp: Complex64 = col.iter().zip(&p.state).map(|(c, s)| c.conj() * s).sum();
            (e, amp.norm_sqr())
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(pairs.into_iter().unzip())
}

/// The Gaussian-broadened distribution from exact diagonalization.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralReference {
    /// Eigenvalues in physical units, ascending.
    pub levels: Vec<f64>,
    pub weights: Vec<f64>,
    pub map: AffineDomainMap,
    /// Kernel width in physical units.
    pub sigma: f64,
    /// Kernel width on `[-1, 1]`.
    pub sigma_mapped: f64,
    /// Kernel mass falling outside the mapped interval.
    pub leakage: f64,
    pub estimate: DensityEstimate,
}

impl SpectralReference {
    /// The broadened distribution on `[-1, 1]` as a density.
    pub fn density(&self) -> GaussianMixture {
        GaussianMixture::spectral(
            self.weights.clone(),
            self.levels.iter().map(|&e| self.map.forward(e)).collect(),
            self.sigma_mapped,
        )
    }
}

/// `P(e) = sum_k |gamma_k|^2 K_sigma(e - e_k)` with a Gaussian kernel of
/// physical width `sigma`, sampled on the mapped grid.
pub fn exact_spectral_density(
    p: &SpectralProblem,
    map: &AffineDomainMap,
    sigma: f64,
    grid: &Grid,
) -> Result<SpectralReference> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
    }
    if p.dim > DEFAULT_DIMENSION_CAP {
        return Err(Error::DimensionCap {
            dim: p.dim,
            cap: DEFAULT_DIMENSION_CAP,
        });
    }
    let (levels, weights) = spectral_decomposition(p)?;
    let sigma_mapped = sigma * map.jacobian();
    let mixture = GaussianMixture::spectral(
        weights.clone(),
        levels.iter().map(|&e| map.forward(e)).collect(),
        sigma_mapped,
    );
    let leakage = mixture.mass_outside_unit_interval();
    let values = grid.points().iter().map(|&y| mixture.value(y)).collect();
    let mut estimate = DensityEstimate::new(Method::ExactOracle, grid.clone(), values, *map);
    if leakage > 1e-6 {
        estimate.warnings.push(Warning::TailLeakage { mass_outside: leakage });
    }
    Ok(SpectralReference {
        levels,
        weights,
        map: *map,
        sigma,
        sigma_mapped,
        leakage,
        estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{moments_to_chebyshev, rescale_moments};

    fn pauli_z() -> SpectralProblem {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        SpectralProblem::diagonal(&[1.0, -1.0], vec![s, s]).unwrap()
    }

    #[test]
    fn validation() {
        let s = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        let bad = vec![z, Complex64::new(0.0, 1.0), Complex64::new(0.0, 1.0), z];
        assert!(matches!(
            SpectralProblem::new(2, bad, vec![s, z]),
            Err(Error::NotHermitian { .. })
        ));
        assert!(matches!(
            SpectralProblem::diagonal(&[1.0, 2.0], vec![s, s]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            SpectralProblem::diagonal(&[1.0, 2.0], vec![s]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            SpectralProblem::with_cap(3, vec![z; 9], vec![s, z, z], 2),
            Err(Error::DimensionCap { .. })
        ));
    }

    #[test]
    fn pauli_moments_alternate() {
        let m = hamiltonian_moments(&pauli_z(), 6).unwrap();
        for (n, v) in m.values_f64().iter().enumerate() {
            let expected = if n % 2 == 0 { 1.0 } else { 0.0 };
            assert!((v - expected).abs() < 1e-15);
        }
        let c = hamiltonian_chebyshev_expectations(&pauli_z(), &AffineDomainMap::identity(), 6).unwrap();
        for (n, v) in c.values().iter().enumerate() {
            let expected = if n % 2 == 0 { 1.0 } else { 0.0 };
            assert!((v - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn identity_and_zero_operators() {
        let s = Complex64::new(0.6, 0.0);
        let t = Complex64::new(0.0, 0.8);
        let id = SpectralProblem::diagonal(&[1.0, 1.0], vec![s, t]).unwrap();
        let m = hamiltonian_moments(&id, 5).unwrap();
        assert!(m.values_f64().iter().all(|v| (v - 1.0).abs() < 1e-15));
        let zero = SpectralProblem::diagonal(&[0.0, 0.0], vec![s, t]).unwrap();
        let c = hamiltonian_chebyshev_expectations(&zero, &AffineDomainMap::identity(), 4).unwrap();
        assert_eq!(c.values(), &[1.0, 0.0, -1.0, 0.0, 1.0]);
    }

    #[test]
    fn moments_match_diagonalization() {
        let p = SpectralProblem::random(8, 11).unwrap();
        let (levels, weights) = spectral_decomposition(&p).unwrap();
        let m = hamiltonian_moments(&p, 20).unwrap().values_f64();
        for (n, mu) in m.iter().enumerate() {
            let oracle: f64 = levels.iter().zip(&weights).map(|(e, w)| w * e.powi(n as i32)).sum();
            assert!((mu - oracle).abs() < 1e-9 * oracle.abs().max(1.0), "n={n}");
        }
        let total: f64 = weights.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn recurrence_matches_monomial_path() {
        let p = SpectralProblem::random(8, 3).unwrap();
        let map = estimate_spectral_bounds(&p, DEFAULT_SPECTRAL_MARGIN);
        let direct = hamiltonian_chebyshev_expectations(&p, &map, 20).unwrap();
        // the raw moments do not depend on the interval they are attached to
        let raw = hamiltonian_moments(&p, 20).unwrap();
        let raw = MomentVector::new(raw.values().to_vec(), (map.lower(), map.upper()), raw.precision()).unwrap();
        let on_map = rescale_moments(&raw, &map).unwrap();
        let monomial = moments_to_chebyshev(&on_map, 20).unwrap();
        for (x, y) in direct.values().iter().zip(monomial.values()) {
            assert!((x - y).abs() < 1e-6);
        }
    }

    #[test]
    fn gershgorin_bounds_contain_spectrum() {
        let p = SpectralProblem::random(64, 5).unwrap();
        let map = estimate_spectral_bounds(&p, 0.05);
        let (levels, _) = spectral_decomposition(&p).unwrap();
        assert!(levels.iter().all(|&e| e > map.lower() && e < map.upper()));
        let d = pauli_z();
        let exact = estimate_spectral_bounds(&d, 0.0);
        assert_eq!((exact.lower(), exact.upper()), (-1.0, 1.0));
    }

    #[test]
    fn escape_is_reported() {
        let p = SpectralProblem::random(8, 3).unwrap();
        let narrow = AffineDomainMap::new(-1.0, 1.0).unwrap();
        assert!(matches!(
            hamiltonian_chebyshev_expectations(&p, &narrow, 10),
            Err(Error::SpectrumEscape { .. })
        ));
    }

    #[test]
    fn broadened_expectations_match_mixture_quadrature() {
        let p = SpectralProblem::random(8, 9).unwrap();
        let map = estimate_spectral_bounds(&p, 0.05);
        let reference = exact_spectral_density(&p, &map, 0.02 * (map.upper() - map.lower()), &Grid::default()).unwrap();
        let c = broadened_chebyshev_expectations(&p, &map, reference.sigma_mapped, 30).unwrap();
        // the kernels reach past [-1, 1]; integrate over the whole support
        let mix = reference.density();
        for n in [0usize, 1, 7, 30] {
            let q = crate::quadrature::integrate(
                |x: f64| mix.value(x) * crate::chebyshev::chebyshev_unchecked(n, x),
                -2.0,
                2.0,
                mix.means(),
                1e-14,
            )
            .unwrap();
            assert!((q - c.values()[n]).abs() < 1e-9, "n={n}");
        }
    }

    #[test]
    fn json_round_trip() {
        let p = SpectralProblem::random(4, 1).unwrap();
        let q = SpectralProblem::from_json(&p.to_json().unwrap()).unwrap();
        assert_eq!(p, q);
    }
}
