use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Affine map from a physical interval `[a, b]` onto `[-1, 1]`,
/// `y = (2x - (a + b)) / (b - a)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineDomainMap {
    a: f64,
    b: f64,
}

impl AffineDomainMap {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a >= b {
            return Err(Error::DegenerateInterval { a, b });
        }
        Ok(AffineDomainMap { a, b })
    }

    pub fn identity() -> Self {
        AffineDomainMap { a: -1.0, b: 1.0 }
    }

    pub fn lower(&self) -> f64 {
        self.a
    }

    pub fn upper(&self) -> f64 {
        self.b
    }

    pub fn is_identity(&self) -> bool {
        self.a == -1.0 && self.b == 1.0
    }

    pub fn forward(&self, x: f64) -> f64 {
        (2.0 * x - (self.a + self.b)) / (self.b - self.a)
    }

    pub fn inverse(&self, y: f64) -> f64 {
        0.5 * ((self.b - self.a) * y + (self.a + self.b))
    }

    /// `dy/dx = 2 / (b - a)`; multiplies a density on `[-1, 1]` to express it
    /// per physical unit.
    pub fn jacobian(&self) -> f64 {
        2.0 / (self.b - self.a)
    }

    /// Exact `(s, t)` with `forward(x) = s x + t`, built from the binary
    /// values of the bounds.
    pub fn exact_coefficients(&self) -> (BigRational, BigRational) {
        let a = rational_from_f64(self.a);
        let b = rational_from_f64(self.b);
        let width = &b - &a;
        let s = BigRational::from_integer(2.into()) / &width;
        let t = -(a + b) / width;
        (s, t)
    }
}

pub(crate) fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite value")
}
