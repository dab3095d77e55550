//! The interface shared by everything that can be evaluated as a density.

use astro_float::BigFloat;
use rand::{Rng, RngCore};

use crate::moments::{ChebyshevExpectations, MomentVector};
use crate::mp::MpContext;

/// A probability density on a bounded interval.
pub trait Density {
    fn pdf(&self, x: f64) -> f64;

    /// Interval carrying the mass.
    fn support(&self) -> (f64, f64) {
        (-1.0, 1.0)
    }

    /// Interior points where the density jumps.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }

    /// Extra points at which quadrature should split (narrow features).
    fn split_hints(&self) -> Vec<f64> {
        Vec::new()
    }

    /// Multiprecision evaluation, when available.
    fn pdf_mp(&self, _x: &BigFloat, _ctx: &mut MpContext) -> Option<BigFloat> {
        None
    }

    /// Closed-form raw moments on `support()`, when available.
    fn exact_moments(&self, _order: usize) -> Option<MomentVector> {
        None
    }

    /// Closed-form raw moments on `support()` evaluated at the precision of
    /// `ctx`, for densities whose moments involve transcendental constants.
    fn moments_mp(&self, _order: usize, _ctx: &mut MpContext) -> Option<Vec<BigFloat>> {
        None
    }

    /// Chebyshev expectations computed without the monomial transform,
    /// when the density has a better route to them.
    fn direct_expectations(&self, _order: usize) -> Option<ChebyshevExpectations> {
        None
    }

    /// Upper bound on the density, enabling rejection sampling.
    fn pdf_bound(&self) -> Option<f64> {
        None
    }

    /// `count` independent draws, or `None` when no sampler exists.
    fn sample(&self, count: usize, rng: &mut dyn RngCore) -> Option<Vec<f64>> {
        let bound = self.pdf_bound()?;
        let (a, b) = self.support();
        Some(rejection_sample(|x| self.pdf(x), a, b, bound, count, rng))
    }
}

/// Rejection sampling from a uniform proposal on `[a, b]`.
pub fn rejection_sample<F: Fn(f64) -> f64>(
    pdf: F,
    a: f64,
    b: f64,
    bound: f64,
    count: usize,
    rng: &mut dyn RngCore,
) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = rng.gen_range(a..b);
        let u: f64 = rng.gen::<f64>() * bound;
        if u < pdf(x) {
            out.push(x);
        }
    }
    out
}

/// A density given by a closure, without breakpoints or extras.
pub struct FnDensity<F> {
    f: F,
    support: (f64, f64),
    breakpoints: Vec<f64>,
}

impl<F: Fn(f64) -> f64> FnDensity<F> {
    pub fn new(f: F, support: (f64, f64)) -> Self {
        FnDensity {
            f,
            support,
            breakpoints: Vec::new(),
        }
    }

    pub fn with_breakpoints(mut self, breakpoints: Vec<f64>) -> Self {
        self.breakpoints = breakpoints;
        self
    }
}

impl<F: Fn(f64) -> f64> Density for FnDensity<F> {
    fn pdf(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    fn support(&self) -> (f64, f64) {
        self.support
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.breakpoints.clone()
    }
}
