//! Weighted inner product `<F, G>_w = int F G sqrt(1 - x^2) dx` and the
//! projection onto the arcsine basis `B_n(x) = T_n(x) / sqrt(1 - x^2)`.
//!
//! Used as an independent optimality check of the closed form: the best
//! weighted-L2 approximation in `span{B_0..B_N}` has coefficients
//! `t*_k = <f, B_k>_w / <B_k, B_k>_w`, and these must equal the coefficients
//! the estimator uses.

use std::f64::consts::PI;

use crate::chebyshev::{chebyshev_unchecked, chebyshev_values};
use crate::density::Density;
use crate::error::Result;
use crate::estimator::chebyshev_sum;
use crate::moments::ChebyshevExpectations;
use crate::quadrature::{gauss_chebyshev, integrate_vec};

/// `<F, G>_w` by `m`-point Gauss-Chebyshev quadrature of
/// `F G (1 - x^2) / sqrt(1 - x^2)`.
pub fn weighted_inner_product<F, G>(f: F, g: G, m: usize) -> f64
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    PI / m as f64
        * gauss_chebyshev(m)
            .into_iter()
            .map(|x| f(x) * g(x) * (1.0 - x * x))
            .sum::<f64>()
}

/// `<B_k, B_k>_w = int T_k^2 / sqrt(1 - x^2) dx` by Gauss-Chebyshev with
/// enough nodes to be exact.
pub fn basis_norm_squared(k: usize) -> f64 {
    let m = k + 2;
    PI / m as f64
        * gauss_chebyshev(m)
            .into_iter()
            .map(|x| chebyshev_unchecked(k, x).powi(2))
            .sum::<f64>()
}

/// Optimal coefficients `t*_0..t*_N` of `f` in the arcsine basis.
///
/// The numerators `<f, B_k>_w = int f T_k dx` come from adaptive
/// Gauss-Legendre quadrature split at the density's breakpoints.
pub fn projection_coefficients<D: Density + ?Sized>(f: &D, order: usize) -> Result<Vec<f64>> {
    let mut breaks = f.breakpoints();
    breaks.extend(f.split_hints());
    let numerators = integrate_vec(
        |x, out| {
            let fx = f.pdf(x);
            for (slot, t) in out.iter_mut().zip(chebyshev_values(order, x)) {
                *slot = fx * t;
            }
        },
        order + 1,
        -1.0,
        1.0,
        &breaks,
        1e-14,
    )?;
    Ok(numerators
        .iter()
        .enumerate()
        .map(|(k, num)| num / basis_norm_squared(k))
        .collect())
}

/// Coefficients the closed form assigns to `B_k`: `<T_0>/pi` and
/// `2 <T_k>/pi`.
pub fn implied_coefficients(c: &ChebyshevExpectations) -> Vec<f64> {
    c.series_coefficients().iter().map(|v| v / PI).collect()
}

/// `||f - f_N||_w` with the weight `sqrt(1 - x^2)`, by `m`-point
/// Gauss-Chebyshev quadrature of `(f sqrt(1 - x^2) - S_N / pi)^2`, where
/// `S_N` is the Chebyshev sum of the estimate.
pub fn weighted_l2_error<F: Fn(f64) -> f64>(f: F, c: &ChebyshevExpectations, m: usize) -> f64 {
    let nodes = gauss_chebyshev(m);
    let sum: f64 = nodes
        .iter()
        .map(|&x| {
            let d = f(x) * (1.0 - x * x).sqrt() - chebyshev_sum(c, x) / PI;
            d * d
        })
        .sum();
    (PI / m as f64 * sum).sqrt()
}

/// Same error from reference values already sampled on the `m`-point
/// Gauss-Chebyshev grid.
pub fn weighted_l2_error_sampled(nodes: &[f64], reference: &[f64], c: &ChebyshevExpectations) -> f64 {
    let m = nodes.len();
    let sum: f64 = nodes
        .iter()
        .zip(reference)
        .map(|(&x, f)| {
            let d = f * (1.0 - x * x).sqrt() - chebyshev_sum(c, x) / PI;
            d * d
        })
        .sum();
    (PI / m as f64 * sum).sqrt()
}

/// `int T_n T_m / sqrt(1 - x^2) dx` by `q`-point Gauss-Chebyshev.
pub fn chebyshev_overlap(n: usize, m: usize, q: usize) -> f64 {
    PI / q as f64
        * gauss_chebyshev(q)
            .into_iter()
            .map(|x| chebyshev_unchecked(n, x) * chebyshev_unchecked(m, x))
            .sum::<f64>()
}
