//! Quadrature rules: Gauss-Legendre (double and multiprecision, with
//! adaptive bisection), Gauss-Hermite and Gauss-Chebyshev.

use std::f64::consts::PI;

use astro_float::BigFloat;

use crate::error::{Error, Result};
use crate::mp::{abs_le, to_f64, MpContext};

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes increasing.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Probabilists' Gauss-Hermite rule: `E[g(Z)] ~ sum_i w_i g(z_i)` for
/// standard normal `Z`, exact for polynomials of degree `< 2n`.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    // physicists' rule (weight e^{-x^2}) via Newton on orthonormal
    // polynomials, then z = sqrt(2) x and weights / sqrt(pi)
    let pim4 = PI.powf(-0.25);
    let mut x_phys = vec![0.0; n];
    let mut w_phys = vec![0.0; n];
    let m = n.div_ceil(2);
    let mut z = 0.0;
    for i in 0..m {
        z = match i {
            0 => (2.0 * n as f64 + 1.0).sqrt() - 1.85575 * (2.0 * n as f64 + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * (n as f64).powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x_phys[0],
            3 => 1.91 * z - 0.91 * x_phys[1],
            _ => 2.0 * z - x_phys[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..200 {
            let (mut p1, mut p2) = (pim4, 0.0);
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = z * (2.0 / (j as f64 + 1.0)).sqrt() * p2
                    - (j as f64 / (j as f64 + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * n as f64).sqrt() * p2;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x_phys[i] = z;
        x_phys[n - 1 - i] = -z;
        w_phys[i] = 2.0 / (pp * pp);
        w_phys[n - 1 - i] = w_phys[i];
    }
    let sqrt_pi = PI.sqrt();
    let mut pairs: Vec<(f64, f64)> = x_phys
        .iter()
        .zip(&w_phys)
        .map(|(x, w)| (std::f64::consts::SQRT_2 * x, w / sqrt_pi))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Gauss-Chebyshev nodes (increasing); every weight equals `pi / m`.
/// `int_{-1}^{1} g(x) / sqrt(1 - x^2) dx ~ (pi/m) sum_j g(x_j)`.
pub fn gauss_chebyshev(m: usize) -> Vec<f64> {
    (0..m)
        .map(|j| -(PI * (j as f64 + 0.5) / m as f64).cos())
        .collect()
}

/// Adaptive double-precision quadrature of `f` over `[a, b]`, split at
/// `breaks`, by Gauss-Legendre bisection.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breaks: &[f64], tol: f64) -> Result<f64> {
    integrate_vec(|x, out| out[0] = f(x), 1, a, b, breaks, tol).map(|v| v[0])
}

/// Vector-valued version of [`integrate`]; `f` fills `out` at `x`.
pub fn integrate_vec<F: FnMut(f64, &mut [f64])>(
    mut f: F,
    dim: usize,
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: f64,
) -> Result<Vec<f64>> {
    const ORDER: usize = 20;
    const MAX_DEPTH: usize = 40;
    let (nodes, weights) = gauss_legendre(ORDER);
    let mut scratch = vec![0.0; dim];
    let mut rule = |lo: f64, hi: f64, f: &mut F| -> Vec<f64> {
        let (c, h) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        let mut acc = vec![0.0; dim];
        for (x, w) in nodes.iter().zip(&weights) {
            f(c + h * x, &mut scratch);
            for (a, s) in acc.iter_mut().zip(&scratch) {
                *a += w * h * s;
            }
        }
        acc
    };

    let mut total = vec![0.0; dim];
    let width = b - a;
    for (lo, hi) in pieces(a, b, breaks) {
        let whole = rule(lo, hi, &mut f);
        let mut stack = vec![(lo, hi, whole, 0usize)];
        while let Some((lo, hi, whole, depth)) = stack.pop() {
            let mid = 0.5 * (lo + hi);
            let left = rule(lo, mid, &mut f);
            let right = rule(mid, hi, &mut f);
            let residual = whole
                .iter()
                .zip(left.iter().zip(&right))
                .map(|(w, (l, r))| (w - l - r).abs())
                .fold(0.0, f64::max);
            let scale = left
                .iter()
                .zip(&right)
                .map(|(l, r)| (l + r).abs())
                .fold(1e-300, f64::max);
            let budget = tol * ((hi - lo) / width).max(1e-3) * scale.max(1.0);
            if residual <= budget || residual <= 1e-15 * scale {
                for (t, (l, r)) in total.iter_mut().zip(left.iter().zip(&right)) {
                    *t += l + r;
                }
            } else if depth >= MAX_DEPTH {
                return Err(Error::QuadratureNonConvergence { lo, hi, residual });
            } else {
                stack.push((lo, mid, left, depth + 1));
                stack.push((mid, hi, right, depth + 1));
            }
        }
    }
    Ok(total)
}

/// `[a, b]` split at the breakpoints that fall strictly inside it.
pub(crate) fn pieces(a: f64, b: f64, breaks: &[f64]) -> Vec<(f64, f64)> {
    let mut cuts: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut edges = vec![a];
    edges.extend(cuts);
    edges.push(b);
    edges.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Gauss-Legendre rule in multiprecision, nodes refined by Newton's method
/// at doubling precision from the double-precision rule.
pub struct MpGaussLegendre {
    nodes: Vec<BigFloat>,
    weights: Vec<BigFloat>,
}

impl MpGaussLegendre {
    pub fn new(n: usize, ctx: &MpContext) -> Self {
        let (seed, _) = gauss_legendre(n);
        let bits = ctx.bits();
        // recurrence constants (2k+1)/(k+1) and k/(k+1)
        let alpha: Vec<BigFloat> = (1..n)
            .map(|k| ctx.div(&ctx.int(2 * k as i64 + 1), &ctx.int(k as i64 + 1)))
            .collect();
        let beta: Vec<BigFloat> = (1..n)
            .map(|k| ctx.div(&ctx.int(k as i64), &ctx.int(k as i64 + 1)))
            .collect();
        let one = ctx.int(1);
        let nn = ctx.int(n as i64);

        let eval = |x: &BigFloat, p: usize| -> (BigFloat, BigFloat) {
            let mut p0 = one.clone();
            let mut p1 = x.clone();
            for k in 1..n {
                let p2 = ctx.sub_p(
                    &ctx.mul_p(&ctx.mul_p(&alpha[k - 1], x, p), &p1, p),
                    &ctx.mul_p(&beta[k - 1], &p0, p),
                    p,
                );
                p0 = p1;
                p1 = p2;
            }
            // P_n' = n (x P_n - P_{n-1}) / (x^2 - 1)
            let num = ctx.mul_p(&nn, &ctx.sub_p(&ctx.mul_p(x, &p1, p), &p0, p), p);
            let den = ctx.sub_p(&ctx.mul_p(x, x, p), &one, p);
            (p1, ctx.div_p(&num, &den, p))
        };

        let half = n.div_ceil(2);
        let mut nodes = vec![BigFloat::new(bits); n];
        let mut weights = vec![BigFloat::new(bits); n];
        for i in n - half..n {
            let mut x = ctx.f(seed[i]);
            let mut p = 128;
            loop {
                p = (2 * p).min(bits);
                let (pn, dpn) = eval(&x, p);
                x = ctx.sub_p(&x, &ctx.div_p(&pn, &dpn, p), p);
                if p == bits {
                    break;
                }
            }
            // polish at full precision until the Newton step is at rounding level
            let mut dpn = one.clone();
            for _ in 0..8 {
                let (pn, d) = eval(&x, bits);
                let step = ctx.div(&pn, &d);
                x = ctx.sub(&x, &step);
                dpn = d;
                if step.is_zero() || step.exponent().is_some_and(|e| e < 8 - bits as i32) {
                    break;
                }
            }
            let w = ctx.div(
                &ctx.int(2),
                &ctx.mul(&ctx.sub(&one, &ctx.mul(&x, &x)), &ctx.mul(&dpn, &dpn)),
            );
            nodes[n - 1 - i] = x.neg();
            weights[n - 1 - i] = w.clone();
            nodes[i] = x;
            weights[i] = w;
        }
        MpGaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[BigFloat] {
        &self.nodes
    }

    pub fn weights(&self) -> &[BigFloat] {
        &self.weights
    }
}

/// Integrand for the multiprecision moment quadrature: called at each node
/// with `x`; returns `f(x)`.
pub trait MpIntegrand {
    fn value(&mut self, x: &BigFloat, ctx: &mut MpContext) -> BigFloat;
}

impl<F: FnMut(&BigFloat, &mut MpContext) -> BigFloat> MpIntegrand for F {
    fn value(&mut self, x: &BigFloat, ctx: &mut MpContext) -> BigFloat {
        self(x, ctx)
    }
}

/// `int x^n f(x) dx` for `n = 0..=order` over `[a, b]` split at `breaks`,
/// adaptive bisection until every moment changes by at most
/// `10^{-digits}` (scaled by the piece's share of the interval).
pub fn mp_moments<I: MpIntegrand>(
    integrand: &mut I,
    a: f64,
    b: f64,
    breaks: &[f64],
    order: usize,
    digits: u32,
    ctx: &mut MpContext,
) -> Result<Vec<BigFloat>> {
    const MAX_DEPTH: usize = 24;
    let rule_size = mp_rule_size(digits, order);
    let rule = MpGaussLegendre::new(rule_size, ctx);
    let width = b - a;
    let tol_unit = BigFloat::parse(
        &format!("1e-{digits}"),
        astro_float::Radix::Dec,
        ctx.bits(),
        astro_float::RoundingMode::ToEven,
        &mut astro_float::Consts::new().map_err(|e| Error::Multiprecision(format!("{e:?}")))?,
    );

    let mut total: Vec<BigFloat> = vec![ctx.int(0); order + 1];
    for (lo, hi) in pieces(a, b, breaks) {
        let (lo, hi) = (ctx.f(lo), ctx.f(hi));
        let whole = apply_mp_rule(&rule, integrand, &lo, &hi, order, ctx);
        let mut stack = vec![(lo, hi, whole, 0usize)];
        while let Some((lo, hi, whole, depth)) = stack.pop() {
            // endpoints stay in multiprecision so that a piece and its two
            // halves cover exactly the same interval
            let mid = ctx.div(&ctx.add(&lo, &hi), &ctx.int(2));
            let left = apply_mp_rule(&rule, integrand, &lo, &mid, order, ctx);
            let right = apply_mp_rule(&rule, integrand, &mid, &hi, order, ctx);
            let share = ctx.f((to_f64(&ctx.sub(&hi, &lo)) / width).max(1e-6));
            let budget = ctx.mul(&tol_unit, &share);
            let mut worst = ctx.int(0);
            let mut ok = true;
            for n in 0..=order {
                let d = ctx.sub(&whole[n], &ctx.add(&left[n], &right[n])).abs();
                if !abs_le(&d, &budget) {
                    ok = false;
                }
                if !abs_le(&d, &worst) {
                    worst = d;
                }
            }
            if ok {
                for n in 0..=order {
                    total[n] = ctx.add(&total[n], &ctx.add(&left[n], &right[n]));
                }
            } else if depth >= MAX_DEPTH {
                return Err(Error::QuadratureNonConvergence {
                    lo: to_f64(&lo),
                    hi: to_f64(&hi),
                    residual: to_f64(&worst),
                });
            } else {
                stack.push((lo, mid.clone(), left, depth + 1));
                stack.push((mid, hi, right, depth + 1));
            }
        }
    }
    Ok(total)
}

/// Number of Gauss-Legendre nodes per panel: enough to integrate the
/// monomials exactly and to reach the target digits on panels of moderate
/// width for analytic integrands.
fn mp_rule_size(digits: u32, order: usize) -> usize {
    let for_digits = (digits as usize * 3) / 5;
    for_digits.max(order / 2 + 8).clamp(24, 256)
}

fn apply_mp_rule<I: MpIntegrand>(
    rule: &MpGaussLegendre,
    integrand: &mut I,
    lo: &BigFloat,
    hi: &BigFloat,
    order: usize,
    ctx: &mut MpContext,
) -> Vec<BigFloat> {
    let two = ctx.int(2);
    let center = ctx.div(&ctx.add(lo, hi), &two);
    let half = ctx.div(&ctx.sub(hi, lo), &two);
    let mut acc: Vec<BigFloat> = vec![ctx.int(0); order + 1];
    for (node, weight) in rule.nodes().iter().zip(rule.weights()) {
        let x = ctx.add(&center, &ctx.mul(&half, node));
        let fx = integrand.value(&x, ctx);
        let mut term = ctx.mul(&ctx.mul(weight, &half), &fx);
        for (n, slot) in acc.iter_mut().enumerate() {
            *slot = ctx.add(slot, &term);
            if n < order {
                term = ctx.mul(&term, &x);
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_integrates_polynomials() {
        let (x, w) = gauss_legendre(10);
        let sum: f64 = w.iter().sum();
        assert!((sum - 2.0).abs() < 1e-14);
        let m18: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(18)).sum();
        assert!((m18 - 2.0 / 19.0).abs() < 1e-14);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn hermite_rule_reproduces_gaussian_moments() {
        let (z, w) = gauss_hermite(20);
        let m: Vec<f64> = (0..=8)
            .map(|k| z.iter().zip(&w).map(|(z, w)| w * z.powi(k)).sum())
            .collect();
        let expected = [1.0, 0.0, 1.0, 0.0, 3.0, 0.0, 15.0, 0.0, 105.0];
        for (a, b) in m.iter().zip(expected) {
            assert!((a - b).abs() < 1e-11 * b.max(1.0), "{a} vs {b}");
        }
        let (z, w) = gauss_hermite(51);
        let m100: f64 = z.iter().zip(&w).map(|(z, w)| w * z.powi(6)).sum();
        assert!((m100 - 15.0).abs() < 1e-10);
    }

    #[test]
    fn adaptive_handles_breakpoints() {
        let step = |x: f64| if x < 0.3 { 1.0 } else { 2.0 };
        let v = integrate(step, -1.0, 1.0, &[0.3], 1e-13).unwrap();
        assert!((v - (1.3 + 1.4)).abs() < 1e-13);
        let v = integrate(|x: f64| (1.0 - x * x).sqrt(), -1.0, 1.0, &[], 1e-10).unwrap();
        assert!((v - PI / 2.0).abs() < 1e-9);
    }

    #[test]
    fn mp_rule_is_accurate() {
        let ctx = MpContext::with_digits(80).unwrap();
        let rule = MpGaussLegendre::new(40, &ctx);
        // sum of weights = 2, x^78 integrates to 2/79
        let mut sum = ctx.int(0);
        let mut m78 = ctx.int(0);
        for (x, w) in rule.nodes().iter().zip(rule.weights()) {
            sum = ctx.add(&sum, w);
            let mut p = w.clone();
            for _ in 0..78 {
                p = ctx.mul(&p, x);
            }
            m78 = ctx.add(&m78, &p);
        }
        let err = crate::mp::to_rational(&ctx.sub(&sum, &ctx.int(2))).unwrap();
        assert!(num_traits::Signed::abs(&err) < num_rational::BigRational::new(1.into(), num_bigint::BigInt::from(10).pow(75)));
        let target = ctx.div(&ctx.int(2), &ctx.int(79));
        let err = crate::mp::to_rational(&ctx.sub(&m78, &target)).unwrap();
        assert!(num_traits::Signed::abs(&err) < num_rational::BigRational::new(1.into(), num_bigint::BigInt::from(10).pow(75)));
    }

    #[test]
    fn mp_moments_of_exponential() {
        let mut ctx = MpContext::with_digits(50).unwrap();
        let mut f = |x: &BigFloat, ctx: &mut MpContext| ctx.exp(x);
        let m = mp_moments(&mut f, -1.0, 1.0, &[], 3, 50, &mut ctx).unwrap();
        // int e^x = e - 1/e
        let e = std::f64::consts::E;
        assert!((to_f64(&m[0]) - (e - 1.0 / e)).abs() < 1e-15);
        // int x e^x = 2/e
        assert!((to_f64(&m[1]) - 2.0 / e).abs() < 1e-15);
    }
}
