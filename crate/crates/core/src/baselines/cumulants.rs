use serde::Serialize;

use crate::error::{Error, Result};
use crate::moments::MomentVector;

/// Highest cumulant order supported.
pub const CUMULANT_CAP: usize = 12;

/// Cumulants `kappa_1..kappa_M`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CumulantVector {
    values: Vec<f64>,
    source_order: usize,
}

impl CumulantVector {
    /// Cumulants given directly; `values[0]` is `kappa_1`.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        check_count(values.len())?;
        let source_order = values.len();
        Ok(CumulantVector {
            values,
            source_order,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `kappa_n` for `n >= 1`.
    pub fn kappa(&self, n: usize) -> f64 {
        self.values[n - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Highest moment order the cumulants were computed from.
    pub fn source_order(&self) -> usize {
        self.source_order
    }

    /// Cumulants of `X + c`.
    pub fn shifted(&self, c: f64) -> Self {
        let mut out = self.clone();
        out.values[0] += c;
        out
    }
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 {
        return Err(Error::InvalidParameter("at least one cumulant is required".into()));
    }
    if count > CUMULANT_CAP {
        return Err(Error::CumulantCap {
            requested: count,
            cap: CUMULANT_CAP,
        });
    }
    Ok(())
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `kappa_n = mu'_n - sum_{k=1}^{n-1} C(n-1, k-1) kappa_k mu'_{n-k}` for
/// `n = 1..=count`, in the units of the moments' domain. The moments are
/// divided by `mu'_0` first.
pub fn moments_to_cumulants(m: &MomentVector, count: usize) -> Result<CumulantVector> {
    check_count(count)?;
    if count > m.order() {
        return Err(Error::InsufficientMoments {
            requested: count,
            available: m.order(),
        });
    }
    let raw = m.values_f64();
    let mu: Vec<f64> = raw.iter().map(|v| v / raw[0]).collect();
    let mut kappa = vec![0.0; count + 1];
    for n in 1..=count {
        let mut k_n = mu[n];
        for k in 1..n {
            k_n -= binomial(n - 1, k - 1) * kappa[k] * mu[n - k];
        }
        kappa[n] = k_n;
    }
    Ok(CumulantVector {
        values: kappa[1..].to_vec(),
        source_order: m.order(),
    })
}

/// Raw moments `mu'_0..mu'_M` from cumulants, by
/// `mu'_n = sum_{k=1}^{n} C(n-1, k-1) kappa_k mu'_{n-k}`.
pub fn cumulants_to_moments(k: &CumulantVector) -> Vec<f64> {
    let m = k.len();
    let mut mu = vec![0.0; m + 1];
    mu[0] = 1.0;
    for n in 1..=m {
        mu[n] = (1..=n)
            .map(|j| binomial(n - 1, j - 1) * k.kappa(j) * mu[n - j])
            .sum();
    }
    mu
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from(values: &[f64]) -> MomentVector {
        MomentVector::from_f64(values, (-10.0, 10.0)).unwrap()
    }

    #[test]
    fn point_mass() {
        let c: f64 = 0.3;
        let m = from(&(0..7).map(|n| c.powi(n)).collect::<Vec<_>>());
        let k = moments_to_cumulants(&m, 6).unwrap();
        assert!((k.kappa(1) - c).abs() < 1e-15);
        for n in 2..=6 {
            assert!(k.kappa(n).abs() < 1e-15, "kappa_{n}");
        }
    }

    #[test]
    fn standard_normal() {
        let k = moments_to_cumulants(&from(&[1.0, 0.0, 1.0, 0.0, 3.0, 0.0, 15.0]), 6).unwrap();
        assert_eq!(k.values(), &[0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn exponential_cumulants() {
        // Exp(1): mu'_n = n!, kappa_n = (n-1)!
        let mut fact = vec![1.0];
        for n in 1..=8 {
            fact.push(fact[n - 1] * n as f64);
        }
        let k = moments_to_cumulants(&from(&fact), 8).unwrap();
        for n in 1..=8 {
            assert!((k.kappa(n) - fact[n - 1]).abs() < 1e-9 * fact[n - 1]);
        }
    }

    #[test]
    fn shift_changes_only_the_mean() {
        let mu = [1.0, 0.1, 0.3, 0.05, 0.2];
        let c: f64 = 0.25;
        // moments of X + c by the binomial expansion
        let shifted: Vec<f64> = (0..5)
            .map(|n| (0..=n).map(|k| binomial(n, k) * c.powi((n - k) as i32) * mu[k]).sum())
            .collect();
        let a = moments_to_cumulants(&from(&mu), 4).unwrap();
        let b = moments_to_cumulants(&from(&shifted), 4).unwrap();
        assert!((b.kappa(1) - a.kappa(1) - c).abs() < 1e-14);
        for n in 2..=4 {
            assert!((b.kappa(n) - a.kappa(n)).abs() < 1e-14);
        }
        assert_eq!(a.shifted(c).kappa(1), a.kappa(1) + c);
    }

    #[test]
    fn errors() {
        let m = from(&[1.0, 0.0, 1.0]);
        assert!(matches!(moments_to_cumulants(&m, 3), Err(Error::InsufficientMoments { .. })));
        assert!(matches!(moments_to_cumulants(&m, 13), Err(Error::CumulantCap { .. })));
        assert!(moments_to_cumulants(&m, 0).is_err());
    }
}
