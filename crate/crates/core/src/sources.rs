//! Moment vectors from analytic densities and from samples.

use num_rational::BigRational;

use crate::density::Density;
use crate::error::{Error, Result};
use crate::moments::{MomentVector, Precision};
use crate::mp::{to_rational, MpContext};
use crate::quadrature::{integrate_vec, mp_moments};

/// Settings for [`moments_from_pdf`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureConfig {
    /// Target digits per moment.
    pub digits: u32,
    /// Return closed-form moments when the density has them.
    pub use_closed_form: bool,
}

impl QuadratureConfig {
    pub fn with_digits(digits: u32) -> Self {
        QuadratureConfig {
            digits,
            use_closed_form: true,
        }
    }
}

/// Digits a double-precision quadrature can honestly claim.
const DOUBLE_DIGITS: u32 = 15;

/// Guard digits carried by the multiprecision quadrature beyond the target.
const GUARD_DIGITS: u32 = 8;

/// `mu'_n = int x^n f(x) dx` over `domain`, `n = 0..=order`.
///
/// Closed forms are used when available (and allowed); otherwise the
/// density is integrated by adaptive multiprecision Gauss-Legendre
/// quadrature if it can be evaluated in multiprecision, and in double
/// precision if not. Quadrature splits at the density's breakpoints and
/// split hints.
pub fn moments_from_pdf<D: Density + ?Sized>(
    f: &D,
    domain: (f64, f64),
    order: usize,
    config: QuadratureConfig,
) -> Result<MomentVector> {
    if config.use_closed_form && domain == f.support() {
        if let Some(m) = f.exact_moments(order) {
            return Ok(m);
        }
    }
    let (a, b) = domain;
    crate::domain::AffineDomainMap::new(a, b)?;
    let mut breaks = f.breakpoints();
    breaks.extend(f.split_hints());

    let mut ctx = MpContext::with_digits(config.digits + GUARD_DIGITS)?;
    if config.use_closed_form && domain == f.support() {
        if let Some(raw) = f.moments_mp(order, &mut ctx) {
            let values = raw.iter().map(to_rational).collect::<Result<Vec<_>>>()?;
            return MomentVector::new(values, domain, Precision::Digits(config.digits));
        }
    }
    let probe = ctx.f(0.5 * (a + b));
    if f.pdf_mp(&probe, &mut ctx).is_some() {
        let mut integrand = |x: &astro_float::BigFloat, ctx: &mut MpContext| {
            f.pdf_mp(x, ctx).expect("multiprecision evaluation")
        };
        let raw = mp_moments(
            &mut integrand,
            a,
            b,
            &breaks,
            order,
            config.digits + GUARD_DIGITS / 2,
            &mut ctx,
        )?;
        let values = raw.iter().map(to_rational).collect::<Result<Vec<_>>>()?;
        return MomentVector::new(values, domain, Precision::Digits(config.digits));
    }

    let raw = integrate_vec(
        |x, out| {
            let fx = f.pdf(x);
            let mut p = fx;
            for slot in out.iter_mut() {
                *slot = p;
                p *= x;
            }
        },
        order + 1,
        a,
        b,
        &breaks,
        1e-15,
    )?;
    let values = raw
        .iter()
        .map(|&v| crate::domain::rational_from_f64(v))
        .collect();
    MomentVector::new(values, domain, Precision::Digits(config.digits.min(DOUBLE_DIGITS)))
}

/// Neumaier's compensated sum.
#[derive(Debug, Clone, Copy, Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Empirical moments `(1/M) sum x_i^n` with compensated summation and
/// standard errors `sqrt(var(x^n) / M)`.
pub fn moments_from_samples(samples: &[f64], order: usize, domain: (f64, f64)) -> Result<MomentVector> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let (a, b) = domain;
    crate::domain::AffineDomainMap::new(a, b)?;
    let outside: Vec<f64> = samples
        .iter()
        .copied()
        .filter(|x| !(*x >= a && *x <= b))
        .collect();
    if !outside.is_empty() {
        return Err(Error::SamplesOutsideDomain {
            a,
            b,
            count: outside.len(),
            offenders: outside.into_iter().take(10).collect(),
        });
    }

    let m = samples.len() as f64;
    let mut sums = vec![CompensatedSum::default(); order + 1];
    let mut squares = vec![CompensatedSum::default(); order + 1];
    for &x in samples {
        let mut p = 1.0;
        for n in 0..=order {
            sums[n].add(p);
            squares[n].add(p * p);
            p *= x;
        }
    }
    let means: Vec<f64> = sums.iter().map(|s| s.value() / m).collect();
    let errors: Vec<f64> = means
        .iter()
        .zip(&squares)
        .map(|(mean, sq)| {
            let var = (sq.value() / m - mean * mean).max(0.0);
            if samples.len() > 1 {
                (var * m / (m - 1.0) / m).sqrt()
            } else {
                0.0
            }
        })
        .collect();
    let values: Vec<BigRational> = means
        .iter()
        .map(|&v| crate::domain::rational_from_f64(v))
        .collect();
    Ok(MomentVector::new(values, domain, Precision::Digits(DOUBLE_DIGITS))?.with_standard_errors(errors))
}
