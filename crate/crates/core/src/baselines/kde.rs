//! Gaussian kernel density estimation with Silverman's bandwidth.

use std::f64::consts::PI;

use crate::domain::AffineDomainMap;
use crate::error::{Error, Result};
use crate::estimator::{DensityEstimate, Grid, Method};

/// Kernel contributions beyond this many bandwidths underflow to zero.
const CUTOFF: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bandwidth {
    Silverman,
    Fixed(f64),
}

/// `0.9 min(std, IQR / 1.34) M^{-1/5}`, with the sample standard deviation
/// (`M - 1` denominator) and the linearly interpolated quartiles. Falls back
/// to the deviation alone when the quartiles coincide.
pub fn silverman_bandwidth(samples: &[f64]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::ZeroDeviation);
    }
    let m = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / m;
    let std = (samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0)).sqrt();
    if !(std > 0.0) {
        return Err(Error::ZeroDeviation);
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let iqr = quantile(&sorted, 0.75) - quantile(&sorted, 0.25);
    let spread = if iqr > 0.0 { std.min(iqr / 1.34) } else { std };
    Ok(0.9 * spread * m.powf(-0.2))
}

/// Quantile of sorted data with linear interpolation between order
/// statistics at position `(M - 1) p`.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let pos = (sorted.len() - 1) as f64 * p;
    let lo = pos.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

#[derive(Debug, Clone, PartialEq)]
pub struct Kde {
    sorted: Vec<f64>,
    bandwidth: f64,
}

impl Kde {
    pub fn new(samples: &[f64], policy: Bandwidth) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySamples);
        }
        let bandwidth = match policy {
            Bandwidth::Silverman => silverman_bandwidth(samples)?,
            Bandwidth::Fixed(h) if h > 0.0 => h,
            Bandwidth::Fixed(h) => {
                return Err(Error::InvalidParameter(format!("bandwidth must be positive, got {h}")))
            }
        };
        let mut sorted = samples.to_vec();
        sorted.sort_by(f64::total_cmp);
        Ok(Kde { sorted, bandwidth })
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// `(1 / (M h)) sum_i phi((x - x_i) / h)`.
    pub fn value(&self, x: f64) -> f64 {
        let h = self.bandwidth;
        let lo = self.sorted.partition_point(|&s| s < x - CUTOFF * h);
        let hi = self.sorted.partition_point(|&s| s <= x + CUTOFF * h);
        let sum: f64 = self.sorted[lo..hi]
            .iter()
            .map(|&s| {
                let z = (x - s) / h;
                (-0.5 * z * z).exp()
            })
            .sum();
        sum / ((2.0 * PI).sqrt() * h * self.sorted.len() as f64)
    }

    /// Range outside which the estimate vanishes in double precision.
    pub fn effective_support(&self) -> (f64, f64) {
        let pad = CUTOFF * self.bandwidth;
        (self.sorted[0] - pad, self.sorted[self.sorted.len() - 1] + pad)
    }
}

pub fn kde_gaussian(samples: &[f64], x: f64, policy: Bandwidth) -> Result<f64> {
    Ok(Kde::new(samples, policy)?.value(x))
}

/// The estimate on a grid in `(-1, 1)`, samples given on the same scale.
pub fn kde_grid(samples: &[f64], policy: Bandwidth, grid: &Grid, map: &AffineDomainMap) -> Result<DensityEstimate> {
    let kde = Kde::new(samples, policy)?;
    let values = grid.points().iter().map(|&x| kde.value(x)).collect();
    Ok(DensityEstimate::new(
        Method::Kde {
            samples: samples.len(),
            bandwidth: kde.bandwidth(),
        },
        grid.clone(),
        values,
        *map,
    ))
}
