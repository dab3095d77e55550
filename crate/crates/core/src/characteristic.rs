//! Truncated Jacobi-Anger characteristic function and a numerical inverse
//! Fourier transform used to cross-check the closed form.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::bessel::bessel_j_sequence;
use crate::estimator::{jade_density, Grid};
use crate::moments::ChebyshevExpectations;
use crate::quadrature::gauss_legendre;

/// `phi(t) = <T_0> J_0(t) + 2 sum_{n=1}^{N} i^n J_n(t) <T_n>`.
#[derive(Debug, Clone)]
pub struct CharacteristicFunction {
    expectations: ChebyshevExpectations,
}

impl CharacteristicFunction {
    pub fn new(expectations: ChebyshevExpectations) -> Self {
        CharacteristicFunction { expectations }
    }

    pub fn order(&self) -> usize {
        self.expectations.order()
    }

    pub fn expectations(&self) -> &ChebyshevExpectations {
        &self.expectations
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        let coeffs = self.expectations.series_coefficients();
        let j = bessel_j_sequence(coeffs.len() - 1, t);
        let (mut re, mut im) = (0.0, 0.0);
        for (n, (c, jn)) in coeffs.iter().zip(&j).enumerate() {
            let v = c * jn;
            match n % 4 {
                0 => re += v,
                1 => im += v,
                2 => re -= v,
                _ => im -= v,
            }
        }
        Complex64::new(re, im)
    }

    /// `(t, phi(t))` on `count` equally spaced points of `[-t_max, t_max]`.
    pub fn sample(&self, t_max: f64, count: usize) -> Vec<(f64, Complex64)> {
        if count == 1 {
            return vec![(0.0, self.eval(0.0))];
        }
        (0..count)
            .map(|k| {
                let t = -t_max + 2.0 * t_max * k as f64 / (count - 1) as f64;
                (t, self.eval(t))
            })
            .collect()
    }
}

pub fn characteristic_function(c: &ChebyshevExpectations, t: f64) -> Complex64 {
    CharacteristicFunction::new(c.clone()).eval(t)
}

/// Treatment of `|t| > t_max` in the inverse transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FourierTail {
    /// Drop the tail: plain truncated integral.
    #[default]
    Truncated,
    /// Add the tail integrated in closed form from the Hankel asymptotic
    /// expansion of `J_n`. Needs `(1 - |x|) t_max` well above one.
    Asymptotic,
}

#[derive(Debug, Clone, Serialize)]
pub struct InverseFtReport {
    pub t_max: f64,
    pub tail: FourierTail,
    pub max_deviation: f64,
    /// Grid point where the deviation is largest.
    pub worst_x: f64,
    /// Inverse-transform values on the grid.
    pub values: Vec<f64>,
}

/// `(1/2pi) int_{-T}^{T} e^{-itx} phi(t) dt` at every grid point, compared
/// with the closed-form density.
pub fn inverse_ft_consistency(
    c: &ChebyshevExpectations,
    t_max: f64,
    grid: &Grid,
    tail: FourierTail,
) -> InverseFtReport {
    let values = inverse_ft(c, t_max, grid.points(), tail);
    let mut max_deviation = 0.0;
    let mut worst_x = f64::NAN;
    for (&x, v) in grid.points().iter().zip(&values) {
        let d = (v - jade_density(c, x).unwrap_or(f64::NAN)).abs();
        if d > max_deviation || d.is_nan() {
            max_deviation = d;
            worst_x = x;
        }
    }
    InverseFtReport {
        t_max,
        tail,
        max_deviation,
        worst_x,
        values,
    }
}

/// Numerical inverse transform at the points `xs`. Uses the symmetry
/// `phi(-t) = conj(phi(t))` to integrate over `[0, T]` only, on Gauss-Legendre
/// panels of width 1/2.
pub fn inverse_ft(c: &ChebyshevExpectations, t_max: f64, xs: &[f64], tail: FourierTail) -> Vec<f64> {
    const PANEL: f64 = 0.5;
    let cf = CharacteristicFunction::new(c.clone());
    let (nodes, weights) = gauss_legendre(16);
    let panels = (t_max / PANEL).ceil().max(1.0) as usize;
    let h = t_max / panels as f64;

    let mut samples = Vec::with_capacity(panels * nodes.len());
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for (g, w) in nodes.iter().zip(&weights) {
            let t = mid + 0.5 * h * g;
            samples.push((t, 0.5 * h * w, cf.eval(t)));
        }
    }

    xs.iter()
        .map(|&x| {
            // Re(e^{-itx} phi) = Re(phi) cos(tx) + Im(phi) sin(tx)
            let body: f64 = samples
                .iter()
                .map(|(t, w, phi)| w * (phi.re * (t * x).cos() + phi.im * (t * x).sin()))
                .sum();
            let extra = match tail {
                FourierTail::Truncated => 0.0,
                FourierTail::Asymptotic => asymptotic_tail(c, x, t_max),
            };
            (body + extra) / PI
        })
        .collect()
}

/// `Re int_T^inf e^{-itx} phi(t) dt` from the Hankel expansion
/// `J_n(t) ~ sqrt(2/(pi t)) Re[e^{i chi} sum_k i^k a_k(n) / t^k]`,
/// `chi = t - n pi/2 - pi/4`, integrated term by term.
fn asymptotic_tail(c: &ChebyshevExpectations, x: f64, t_max: f64) -> f64 {
    const HANKEL_TERMS: usize = 8;
    let i = Complex64::i();
    let mut total = Complex64::new(0.0, 0.0);
    for (n, coef) in c.series_coefficients().into_iter().enumerate() {
        if coef == 0.0 {
            continue;
        }
        let mu = 4.0 * (n * n) as f64;
        let phase = Complex64::from_polar(1.0, -(n as f64) * PI / 2.0 - PI / 4.0);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut a = 1.0;
        let mut ik = Complex64::new(1.0, 0.0);
        let mut last = f64::INFINITY;
        for k in 0..HANKEL_TERMS {
            if k > 0 {
                a *= (mu - ((2 * k - 1) * (2 * k - 1)) as f64) / (8.0 * k as f64);
                ik *= i;
            }
            // stop at the smallest term of the asymptotic series
            let size = a.abs() / t_max.powi(k as i32);
            if size > last {
                break;
            }
            last = size;
            let s = k as f64 + 0.5;
            let z = ik * a * phase;
            acc += 0.5 * (z * tail_integral(s, 1.0 - x, t_max) + z.conj() * tail_integral(s, -(1.0 + x), t_max));
        }
        total += coef * i.powu(n as u32) * (2.0 / PI).sqrt() * acc;
    }
    total.re
}

/// `int_T^inf t^{-s} e^{i w t} dt` for `w T` large, by repeated integration
/// by parts: `-e^{iwT} T^{-s} / (iw) sum_j (s)_j / (iwT)^j`.
fn tail_integral(s: f64, w: f64, t: f64) -> Complex64 {
    let iwt = Complex64::new(0.0, w * t);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for j in 0..60 {
        let next = term * (s + j as f64) / iwt;
        if next.norm() > term.norm() || next.norm() < 1e-18 {
            break;
        }
        sum += next;
        term = next;
    }
    let prefactor = -Complex64::from_polar(t.powf(-s), w * t) / Complex64::new(0.0, w);
    prefactor * sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::bessel_j;

    #[test]
    fn value_at_zero_is_normalization() {
        let c = ChebyshevExpectations::new(vec![1.0, 0.3, -0.2, 0.1]);
        let v = characteristic_function(&c, 0.0);
        assert_eq!(v, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn two_point_masses_give_cosine() {
        let n = 40;
        let c = ChebyshevExpectations::new((0..=n).map(|k| if k % 2 == 0 { 1.0 } else { 0.0 }).collect());
        let tail: f64 = (n + 1..n + 60).map(|k| 2.0 * bessel_j(k, 2.0).abs()).sum();
        let v = characteristic_function(&c, 2.0);
        assert!((v.re - 2f64.cos()).abs() <= tail + 1e-15);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn conjugate_symmetry() {
        let c = ChebyshevExpectations::new(vec![1.0, 0.4, -0.1, 0.25, 0.05]);
        let cf = CharacteristicFunction::new(c);
        for k in 0..100 {
            let t = 0.37 * k as f64 - 11.0;
            let d = cf.eval(-t) - cf.eval(t).conj();
            assert!(d.norm() < 1e-14);
        }
    }

    #[test]
    fn tail_integral_matches_quadrature() {
        // int_50^inf t^{-1/2} e^{i t} dt, tail beyond 5000 handled by the series
        let (s, w, t0) = (0.5, 1.0, 50.0);
        let (g, gw) = gauss_legendre(16);
        let mut direct = Complex64::new(0.0, 0.0);
        let mut a = t0;
        while a < 5000.0 {
            let b = a + 0.5;
            for (x, wt) in g.iter().zip(&gw) {
                let t = 0.5 * (a + b) + 0.25 * x;
                direct += 0.25 * wt * Complex64::from_polar(t.powf(-s), w * t);
            }
            a = b;
        }
        direct += tail_integral(s, w, 5000.0);
        assert!((direct - tail_integral(s, w, t0)).norm() < 1e-10);
    }

    #[test]
    fn arcsine_centre_approaches_inverse_pi() {
        // the missing tail int_T^inf J_0 is bounded by the envelope sqrt(2/(pi T))
        let c = ChebyshevExpectations::arcsine(0);
        for t_max in [50.0, 100.0, 200.0, 400.0] {
            let v = inverse_ft(&c, t_max, &[0.0], FourierTail::Truncated)[0];
            let envelope = (2.0 / (PI * t_max)).sqrt() / PI;
            assert!((v - 1.0 / PI).abs() <= 1.05 * envelope, "{t_max}");
        }
    }
}
