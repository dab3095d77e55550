//! Gram-Charlier A series
//! `f(x) = phi(z) / s * sum_{n=0}^{M} c_n He_n(z)`, `z = (x - kappa_1) / s`,
//! `s = sqrt(kappa_2)`, with `c_n` the coefficients of
//! `exp(sum_{j>=3} lambda_j t^j / j!)` and `lambda_j = kappa_j / s^j`.

use std::f64::consts::PI;

use crate::baselines::cumulants::CumulantVector;
use crate::domain::AffineDomainMap;
use crate::error::{Error, Result};
use crate::estimator::{DensityEstimate, Grid, Method};
use crate::warning::Warning;

#[derive(Debug, Clone, PartialEq)]
pub struct GramCharlier {
    mean: f64,
    scale: f64,
    coefficients: Vec<f64>,
}

impl GramCharlier {
    pub fn new(k: &CumulantVector) -> Result<Self> {
        let order = k.len();
        let mean = k.kappa(1);
        if order < 2 {
            return Err(Error::InvalidParameter(
                "Gram-Charlier needs at least two cumulants".into(),
            ));
        }
        let kappa2 = k.kappa(2);
        if !(kappa2 > 0.0) {
            return Err(Error::NonPositiveVariance { kappa2 });
        }
        let scale = kappa2.sqrt();
        let lambda: Vec<f64> = (0..=order)
            .map(|j| if j < 3 { 0.0 } else { k.kappa(j) / scale.powi(j as i32) })
            .collect();

        // complete Bell polynomials: B_{n+1} = sum_k C(n, k) B_{n-k} lambda_{k+1}
        let mut bell = vec![0.0; order + 1];
        bell[0] = 1.0;
        for n in 0..order {
            let mut binom = 1.0;
            let mut acc = 0.0;
            for kk in 0..=n {
                acc += binom * bell[n - kk] * lambda[kk + 1];
                binom = binom * (n - kk) as f64 / (kk + 1) as f64;
            }
            bell[n + 1] = acc;
        }
        let mut factorial = 1.0;
        let coefficients = bell
            .iter()
            .enumerate()
            .map(|(n, b)| {
                if n > 0 {
                    factorial *= n as f64;
                }
                b / factorial
            })
            .collect();
        Ok(GramCharlier {
            mean,
            scale,
            coefficients,
        })
    }

    /// `c_0..c_M`; `c_1 = c_2 = 0` by construction.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn value(&self, x: f64) -> f64 {
        let z = (x - self.mean) / self.scale;
        let phi = (-0.5 * z * z).exp() / (2.0 * PI).sqrt();
        let mut he_prev = 1.0;
        let mut he = z;
        let mut sum = self.coefficients[0];
        for (n, c) in self.coefficients.iter().enumerate().skip(1) {
            sum += c * he;
            let next = z * he - n as f64 * he_prev;
            he_prev = he;
            he = next;
        }
        phi / self.scale * sum
    }
}

pub fn gram_charlier(k: &CumulantVector, x: f64) -> Result<f64> {
    Ok(GramCharlier::new(k)?.value(x))
}

/// The series on a grid in `(-1, 1)`, with cumulants of the mapped variable.
pub fn gram_charlier_grid(k: &CumulantVector, grid: &Grid, map: &AffineDomainMap) -> Result<DensityEstimate> {
    let gc = GramCharlier::new(k)?;
    let values = grid.points().iter().map(|&x| gc.value(x)).collect();
    let mut est = DensityEstimate::new(
        Method::GramCharlier { cumulants: k.len() },
        grid.clone(),
        values,
        *map,
    );
    let min = est.min();
    if min < 0.0 {
        est.warnings.push(Warning::NegativeDensity { min });
    }
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_fixed_point() {
        let k = CumulantVector::new(vec![0.0, 1.0]).unwrap();
        let v = gram_charlier(&k, 0.0).unwrap();
        assert!((v - 0.3989422804014327).abs() < 1e-15);
    }

    #[test]
    fn coefficients_match_hand_expansion() {
        let (l3, l4, l5, l6) = (0.3, -0.2, 0.1, 0.05);
        let k = CumulantVector::new(vec![0.0, 1.0, l3, l4, l5, l6]).unwrap();
        let c = GramCharlier::new(&k).unwrap();
        let c = c.coefficients();
        assert_eq!(c[1], 0.0);
        assert_eq!(c[2], 0.0);
        assert!((c[3] - l3 / 6.0).abs() < 1e-16);
        assert!((c[4] - l4 / 24.0).abs() < 1e-16);
        assert!((c[5] - l5 / 120.0).abs() < 1e-16);
        assert!((c[6] - (l6 / 720.0 + l3 * l3 / 72.0)).abs() < 1e-16);
    }

    #[test]
    fn scaled_cumulants_standardize() {
        // N(0.2, 0.5^2) with a third cumulant: scaling x rescales the density
        let k = CumulantVector::new(vec![0.2, 0.25, 0.01]).unwrap();
        let s: f64 = 0.5;
        let z: f64 = 0.7;
        let lambda3 = 0.01 / s.powi(3);
        let he3 = z * z * z - 3.0 * z;
        let expected = (-0.5 * z * z).exp() / (2.0 * PI).sqrt() / s * (1.0 + lambda3 / 6.0 * he3);
        assert!((gram_charlier(&k, 0.2 + s * z).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn non_positive_variance() {
        let k = CumulantVector::new(vec![0.0, 0.0, 0.0]).unwrap();
        assert!(matches!(gram_charlier(&k, 0.0), Err(Error::NonPositiveVariance { .. })));
    }
}
