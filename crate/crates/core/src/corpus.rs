//! Benchmark densities on `[-1, 1]` and the spectral ground truth.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::Serialize;
use serde_json::json;

use crate::density::{rejection_sample, Density};
use crate::domain::{rational_from_f64, AffineDomainMap};
use crate::error::{Error, Result};
use crate::moments::{moments_to_chebyshev, ChebyshevExpectations, MomentVector};
use crate::mp::MpContext;
use crate::sources::{moments_from_pdf, QuadratureConfig};
use crate::spectral::{
    broadened_chebyshev_expectations, estimate_spectral_bounds, SpectralProblem, DEFAULT_SPECTRAL_MARGIN,
};

fn check_domain(x: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain {
            value: x,
            domain: "[-1, 1]",
        })
    }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `f(x) = -21/8 (x - 1)(x + 1)(x^4 - x^3 + x^2)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct BimodalPoly;

impl BimodalPoly {
    /// Expanded: `-21/8 (x^6 - x^5 + x^3 - x^2)`.
    const TERMS: [(usize, i64); 4] = [(6, 1), (5, -1), (3, 1), (2, -1)];

    pub fn eval(x: f64) -> Result<f64> {
        check_domain(x)?;
        Ok(Self::value(x))
    }

    fn value(x: f64) -> f64 {
        -21.0 / 8.0 * (x - 1.0) * (x + 1.0) * (x.powi(4) - x.powi(3) + x * x)
    }
}

impl Density for BimodalPoly {
    fn pdf(&self, x: f64) -> f64 {
        if x.abs() > 1.0 {
            0.0
        } else {
            Self::value(x)
        }
    }

    fn pdf_mp(&self, x: &BigFloat, ctx: &mut MpContext) -> Option<BigFloat> {
        let x2 = ctx.mul(x, x);
        let x3 = ctx.mul(&x2, x);
        let x5 = ctx.mul(&x3, &x2);
        let x6 = ctx.mul(&x3, &x3);
        let poly = ctx.sub(&ctx.add(&ctx.sub(&x6, &x5), &x3), &x2);
        Some(ctx.div(&ctx.mul(&ctx.int(-21), &poly), &ctx.int(8)))
    }

    fn exact_moments(&self, order: usize) -> Option<MomentVector> {
        let values = (0..=order)
            .map(|n| {
                let mut acc = ratio(0, 1);
                for (power, sign) in Self::TERMS {
                    let k = n + power;
                    if k % 2 == 0 {
                        acc += ratio(2 * sign, k as i64 + 1);
                    }
                }
                acc * ratio(-21, 8)
            })
            .collect();
        MomentVector::exact(values, (-1.0, 1.0)).ok()
    }

    fn pdf_bound(&self) -> Option<f64> {
        Some(1.5)
    }
}

/// Logistic density `1 / (1 + e^{-5x})`, unit mass on `[-1, 1]` because
/// `f(x) + f(-x) = 1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sigmoid;

impl Sigmoid {
    pub fn eval(x: f64) -> Result<f64> {
        check_domain(x)?;
        Ok(Self::value(x))
    }

    fn value(x: f64) -> f64 {
        1.0 / (1.0 + (-5.0 * x).exp())
    }
}

impl Density for Sigmoid {
    fn pdf(&self, x: f64) -> f64 {
        if x.abs() > 1.0 {
            0.0
        } else {
            Self::value(x)
        }
    }

    fn pdf_mp(&self, x: &BigFloat, ctx: &mut MpContext) -> Option<BigFloat> {
        let e = ctx.exp(&ctx.mul(&ctx.int(-5), x));
        Some(ctx.div(&ctx.int(1), &ctx.add(&ctx.int(1), &e)))
    }

    fn pdf_bound(&self) -> Option<f64> {
        Some(1.0)
    }
}

/// Uniform on `[-0.6, 0.8]`: height `1/1.4`, jumps at both ends.
#[derive(Debug, Clone, Copy, Default)]
pub struct AsymUniform;

impl AsymUniform {
    pub const LOWER: f64 = -0.6;
    pub const UPPER: f64 = 0.8;

    pub fn eval(x: f64) -> Result<f64> {
        check_domain(x)?;
        Ok(Self.pdf(x))
    }
}

impl Density for AsymUniform {
    fn pdf(&self, x: f64) -> f64 {
        if (Self::LOWER..=Self::UPPER).contains(&x) {
            1.0 / 1.4
        } else {
            0.0
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![Self::LOWER, Self::UPPER]
    }

    /// `mu'_n = (5/7) ((4/5)^{n+1} - (-3/5)^{n+1}) / (n + 1)`, exactly.
    fn exact_moments(&self, order: usize) -> Option<MomentVector> {
        let hi = ratio(4, 5);
        let lo = ratio(-3, 5);
        let height = ratio(5, 7);
        let mut hp = hi.clone();
        let mut lp = lo.clone();
        let mut values = Vec::with_capacity(order + 1);
        for n in 0..=order {
            values.push(&height * (&hp - &lp) / BigInt::from(n + 1));
            hp *= &hi;
            lp *= &lo;
        }
        MomentVector::exact(values, (-1.0, 1.0)).ok()
    }

    fn pdf_bound(&self) -> Option<f64> {
        Some(1.0 / 1.4)
    }

    fn sample(&self, count: usize, rng: &mut dyn RngCore) -> Option<Vec<f64>> {
        Some((0..count).map(|_| rng.gen_range(Self::LOWER..Self::UPPER)).collect())
    }
}

/// Standard normal CDF.
fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / SQRT_2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MixtureKind {
    /// Truncated to `[-1, 1]` and renormalized there.
    Truncated,
    /// Left untruncated: mass outside `[-1, 1]` is leakage.
    Spectral,
}

/// `sum_k w_k N(m_k, sigma^2)`, either renormalized on `[-1, 1]` or not.
#[derive(Debug, Clone, Serialize)]
pub struct GaussianMixture {
    weights: Vec<f64>,
    means: Vec<f64>,
    sigma: f64,
    kind: MixtureKind,
    /// Multiplies `sum_k w_k exp(-(x - m_k)^2 / (2 sigma^2))`.
    scale: f64,
    seed: Option<u64>,
}

/// Smallest kernel width accepted by the multimodal generator.
pub const MIN_MULTIMODAL_SIGMA: f64 = 0.005;

/// Default kernel width of the multimodal generator.
pub const DEFAULT_MULTIMODAL_SIGMA: f64 = 0.08;

impl GaussianMixture {
    pub fn truncated(weights: Vec<f64>, means: Vec<f64>, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
        }
        if weights.is_empty() || weights.len() != means.len() || weights.iter().any(|w| !(*w >= 0.0)) {
            return Err(Error::InvalidParameter(
                "mixture needs matching non-negative weights and means".into(),
            ));
        }
        let mut g = GaussianMixture {
            weights,
            means,
            sigma,
            kind: MixtureKind::Truncated,
            scale: 1.0,
            seed: None,
        };
        let inside = 1.0 - g.raw_mass_outside();
        g.scale = 1.0 / (sigma * (2.0 * PI).sqrt() * inside);
        Ok(g)
    }

    /// Broadened spectral distribution; the weights are expected to sum to one.
    pub fn spectral(weights: Vec<f64>, means: Vec<f64>, sigma: f64) -> Self {
        GaussianMixture {
            weights,
            means,
            sigma,
            kind: MixtureKind::Spectral,
            scale: 1.0 / (sigma * (2.0 * PI).sqrt()),
            seed: None,
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn kind(&self) -> MixtureKind {
        self.kind
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Density value without truncation.
    pub fn value(&self, x: f64) -> f64 {
        let inv = 1.0 / (2.0 * self.sigma * self.sigma);
        self.scale
            * self
                .weights
                .iter()
                .zip(&self.means)
                .map(|(w, m)| w * (-(x - m) * (x - m) * inv).exp())
                .sum::<f64>()
    }

    fn raw_mass_outside(&self) -> f64 {
        let total: f64 = self.weights.iter().sum();
        let inside: f64 = self
            .weights
            .iter()
            .zip(&self.means)
            .map(|(w, m)| w * (normal_cdf((1.0 - m) / self.sigma) - normal_cdf((-1.0 - m) / self.sigma)))
            .sum();
        (total - inside) / total
    }

    /// Fraction of the untruncated mixture mass outside `[-1, 1]`.
    pub fn mass_outside_unit_interval(&self) -> f64 {
        self.raw_mass_outside()
    }

    /// Exact raw moments of the untruncated mixture, taking the binary
    /// weights, means and width at face value. Each component follows
    /// `M_n = m M_{n-1} + (n - 1) sigma^2 M_{n-2}`.
    pub fn untruncated_moments(&self, order: usize) -> MomentVector {
        let var = rational_from_f64(self.sigma * self.sigma);
        let mut total = vec![BigRational::zero(); order + 1];
        for (w, m) in self.weights.iter().zip(&self.means) {
            let (w, m) = (rational_from_f64(*w), rational_from_f64(*m));
            let mut prev = BigRational::zero();
            let mut cur = BigRational::one();
            for (n, slot) in total.iter_mut().enumerate() {
                if n > 0 {
                    let next = &m * &cur + &var * BigRational::from_integer(BigInt::from(n - 1)) * &prev;
                    prev = std::mem::replace(&mut cur, next);
                }
                *slot += &w * &cur;
            }
        }
        MomentVector::exact(total, (-1.0, 1.0)).expect("valid domain")
    }
}

impl Density for GaussianMixture {
    fn pdf(&self, x: f64) -> f64 {
        if self.kind == MixtureKind::Truncated && x.abs() > 1.0 {
            0.0
        } else {
            self.value(x)
        }
    }

    fn split_hints(&self) -> Vec<f64> {
        self.means.clone()
    }

    /// Truncated case only. Each component's moments over `[-1, 1]` follow
    /// `I_n = m I_{n-1} + (n-1) s^2 I_{n-2} - s^2 [g(1) - (-1)^{n-1} g(-1)]`
    /// with `g` the unnormalized kernel and `I_0` from the error function.
    fn moments_mp(&self, order: usize, ctx: &mut MpContext) -> Option<Vec<BigFloat>> {
        if self.kind != MixtureKind::Truncated {
            return None;
        }
        let s = ctx.f(self.sigma);
        let var = ctx.mul(&s, &s);
        let inv = ctx.div(&ctx.f(-0.5), &var);
        let pi = ctx.pi();
        let root_half_pi = ctx.sqrt(&ctx.div(&pi, &ctx.int(2)));
        let s_root2 = ctx.mul(&s, &ctx.sqrt(&ctx.int(2)));
        let mut total = vec![ctx.int(0); order + 1];
        for (w, m) in self.weights.iter().zip(&self.means) {
            let m = ctx.f(*m);
            let kernel = |x: i64, ctx: &mut MpContext| {
                let d = ctx.sub(&ctx.int(x), &m);
                ctx.exp(&ctx.mul(&ctx.mul(&d, &d), &inv))
            };
            let (g_hi, g_lo) = (kernel(1, ctx), kernel(-1, ctx));
            let hi = ctx.erf(&ctx.div(&ctx.sub(&ctx.int(1), &m), &s_root2));
            let lo = ctx.erf(&ctx.div(&ctx.sub(&ctx.int(-1), &m), &s_root2));
            let mut prev = ctx.int(0);
            let mut cur = ctx.mul(&ctx.mul(&s, &root_half_pi), &ctx.sub(&hi, &lo));
            let w = ctx.f(*w);
            for (n, slot) in total.iter_mut().enumerate() {
                if n > 0 {
                    let boundary = if n % 2 == 1 { ctx.sub(&g_hi, &g_lo) } else { ctx.add(&g_hi, &g_lo) };
                    let next = ctx.add(&ctx.mul(&m, &cur), &ctx.mul(&ctx.mul(&var, &ctx.int(n as i64 - 1)), &prev));
                    let next = ctx.sub(&next, &ctx.mul(&var, &boundary));
                    prev = std::mem::replace(&mut cur, next);
                }
                *slot = ctx.add(slot, &ctx.mul(&w, &cur));
            }
        }
        let scale = ctx.f(self.scale);
        Some(total.iter().map(|v| ctx.mul(v, &scale)).collect())
    }

    fn pdf_mp(&self, x: &BigFloat, ctx: &mut MpContext) -> Option<BigFloat> {
        let s = ctx.f(self.sigma);
        let inv = ctx.div(&ctx.f(-0.5), &ctx.mul(&s, &s));
        let mut acc = ctx.int(0);
        for (w, m) in self.weights.iter().zip(&self.means) {
            let d = ctx.sub(x, &ctx.f(*m));
            let e = ctx.exp(&ctx.mul(&ctx.mul(&d, &d), &inv));
            acc = ctx.add(&acc, &ctx.mul(&ctx.f(*w), &e));
        }
        Some(ctx.mul(&acc, &ctx.f(self.scale)))
    }

    fn pdf_bound(&self) -> Option<f64> {
        Some(self.scale * self.weights.iter().sum::<f64>())
    }

    fn sample(&self, count: usize, rng: &mut dyn RngCore) -> Option<Vec<f64>> {
        let total: f64 = self.weights.iter().sum();
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let mut u = rng.gen::<f64>() * total;
            let mut k = 0;
            while k + 1 < self.weights.len() && u >= self.weights[k] {
                u -= self.weights[k];
                k += 1;
            }
            let z: f64 = StandardNormal.sample(rng);
            let x = self.means[k] + self.sigma * z;
            if x.abs() <= 1.0 {
                out.push(x);
            }
        }
        Some(out)
    }
}

/// Seeded multimodal mixture: `modes` components (uniform in `4..=8` when
/// not given), locations uniform in `[-0.85, 0.85]`, flat-Dirichlet weights,
/// renormalized to unit mass on `[-1, 1]`.
pub fn random_multimodal(seed: u64, modes: Option<usize>, sigma: f64) -> Result<GaussianMixture> {
    if !(sigma >= MIN_MULTIMODAL_SIGMA) {
        return Err(Error::InvalidParameter(format!(
            "sigma {sigma} is below {MIN_MULTIMODAL_SIGMA}; modes this narrow are not resolved"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = match modes {
        Some(0) => return Err(Error::InvalidParameter("at least one mode is required".into())),
        Some(k) => k,
        None => rng.gen_range(4..=8),
    };
    let means: Vec<f64> = (0..k).map(|_| rng.gen_range(-0.85..=0.85)).collect();
    let raw: Vec<f64> = (0..k).map(|_| Exp1.sample(&mut rng)).collect();
    let total: f64 = raw.iter().sum();
    let weights = raw.iter().map(|w| w / total).collect();
    let mut g = GaussianMixture::truncated(weights, means, sigma)?;
    g.seed = Some(seed);
    Ok(g)
}

/// Broadened spectrum of a Hermitian problem, on its mapped interval.
#[derive(Debug, Clone)]
pub struct SpectralCase {
    pub problem: SpectralProblem,
    pub map: AffineDomainMap,
    /// Kernel width in physical units.
    pub sigma: f64,
    pub mixture: GaussianMixture,
}

/// Default kernel width of the spectral ground truth, as a fraction of the
/// mapped interval width.
pub const DEFAULT_SIGMA_FRACTION: f64 = 0.02;

impl SpectralCase {
    pub fn new(problem: SpectralProblem, margin: f64, sigma_fraction: f64) -> Result<Self> {
        let map = estimate_spectral_bounds(&problem, margin);
        let sigma = sigma_fraction * (map.upper() - map.lower());
        let (levels, weights) = crate::spectral::spectral_decomposition(&problem)?;
        let mixture = GaussianMixture::spectral(
            weights,
            levels.iter().map(|&e| map.forward(e)).collect(),
            sigma * map.jacobian(),
        );
        Ok(SpectralCase {
            problem,
            map,
            sigma,
            mixture,
        })
    }

    /// The seeded 64-level problem with default margin and width.
    pub fn seeded(dim: usize, seed: u64) -> Result<Self> {
        Self::new(SpectralProblem::random(dim, seed)?, DEFAULT_SPECTRAL_MARGIN, DEFAULT_SIGMA_FRACTION)
    }
}

impl Density for SpectralCase {
    fn pdf(&self, x: f64) -> f64 {
        self.mixture.pdf(x)
    }

    /// Moments of the broadened measure over the whole line, consistent
    /// with the direct expectations.
    fn exact_moments(&self, order: usize) -> Option<MomentVector> {
        Some(self.mixture.untruncated_moments(order))
    }

    fn direct_expectations(&self, order: usize) -> Option<ChebyshevExpectations> {
        broadened_chebyshev_expectations(&self.problem, &self.map, self.mixture.sigma(), order).ok()
    }

    fn sample(&self, count: usize, rng: &mut dyn RngCore) -> Option<Vec<f64>> {
        self.mixture.sample(count, rng)
    }
}

/// Names of the benchmark densities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusId {
    BimodalPoly,
    MultimodalGauss,
    AsymUniform,
    Sigmoid,
    SpectralExact,
}

impl CorpusId {
    pub const ALL: [CorpusId; 5] = [
        CorpusId::BimodalPoly,
        CorpusId::MultimodalGauss,
        CorpusId::AsymUniform,
        CorpusId::Sigmoid,
        CorpusId::SpectralExact,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CorpusId::BimodalPoly => "bimodal-poly",
            CorpusId::MultimodalGauss => "multimodal-gauss",
            CorpusId::AsymUniform => "asym-uniform",
            CorpusId::Sigmoid => "sigmoid",
            CorpusId::SpectralExact => "spectral-exact",
        }
    }

    /// Moment count used for this case in the benchmark comparison.
    pub fn paper_order(&self) -> usize {
        match self {
            CorpusId::BimodalPoly => 20,
            CorpusId::MultimodalGauss => 50,
            CorpusId::AsymUniform => 100,
            CorpusId::Sigmoid => 50,
            CorpusId::SpectralExact => 100,
        }
    }

    /// Whether the density is smooth on `[-1, 1]`.
    pub fn is_smooth(&self) -> bool {
        !matches!(self, CorpusId::AsymUniform)
    }
}

impl fmt::Display for CorpusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CorpusId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CorpusId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownDensity(s.to_string()))
    }
}

/// Generator settings for the seeded corpus members.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusConfig {
    pub seed: u64,
    pub modes: Option<usize>,
    pub multimodal_sigma: f64,
    pub spectral_dim: usize,
    pub spectral_margin: f64,
    pub sigma_fraction: f64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            seed: 42,
            modes: None,
            multimodal_sigma: DEFAULT_MULTIMODAL_SIGMA,
            spectral_dim: 64,
            spectral_margin: DEFAULT_SPECTRAL_MARGIN,
            sigma_fraction: DEFAULT_SIGMA_FRACTION,
        }
    }
}

/// One benchmark density.
#[derive(Debug, Clone)]
pub enum CorpusDensity {
    BimodalPoly(BimodalPoly),
    MultimodalGauss(GaussianMixture),
    AsymUniform(AsymUniform),
    Sigmoid(Sigmoid),
    SpectralExact(Box<SpectralCase>),
}

impl CorpusDensity {
    pub fn build(id: CorpusId, config: &CorpusConfig) -> Result<Self> {
        Ok(match id {
            CorpusId::BimodalPoly => CorpusDensity::BimodalPoly(BimodalPoly),
            CorpusId::MultimodalGauss => CorpusDensity::MultimodalGauss(random_multimodal(
                config.seed,
                config.modes,
                config.multimodal_sigma,
            )?),
            CorpusId::AsymUniform => CorpusDensity::AsymUniform(AsymUniform),
            CorpusId::Sigmoid => CorpusDensity::Sigmoid(Sigmoid),
            CorpusId::SpectralExact => CorpusDensity::SpectralExact(Box::new(SpectralCase::new(
                SpectralProblem::random(config.spectral_dim, config.seed)?,
                config.spectral_margin,
                config.sigma_fraction,
            )?)),
        })
    }

    pub fn id(&self) -> CorpusId {
        match self {
            CorpusDensity::BimodalPoly(_) => CorpusId::BimodalPoly,
            CorpusDensity::MultimodalGauss(_) => CorpusId::MultimodalGauss,
            CorpusDensity::AsymUniform(_) => CorpusId::AsymUniform,
            CorpusDensity::Sigmoid(_) => CorpusId::Sigmoid,
            CorpusDensity::SpectralExact(_) => CorpusId::SpectralExact,
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            CorpusDensity::MultimodalGauss(g) => g.seed(),
            _ => None,
        }
    }

    fn inner(&self) -> &dyn Density {
        match self {
            CorpusDensity::BimodalPoly(d) => d,
            CorpusDensity::MultimodalGauss(d) => d,
            CorpusDensity::AsymUniform(d) => d,
            CorpusDensity::Sigmoid(d) => d,
            CorpusDensity::SpectralExact(d) => d.as_ref(),
        }
    }

    /// Chebyshev expectations up to `order`: the direct route when the
    /// density has one, otherwise moments (closed form or quadrature at
    /// `digits`) followed by the exact monomial transform.
    pub fn expectations(&self, order: usize, digits: u32) -> Result<ChebyshevExpectations> {
        if let Some(c) = self.direct_expectations(order) {
            return Ok(c);
        }
        let m = moments_from_pdf(self, (-1.0, 1.0), order, QuadratureConfig::with_digits(digits))?;
        moments_to_chebyshev(&m, order)
    }

    /// Generating parameters, for the record written next to the samples.
    pub fn parameters(&self) -> serde_json::Value {
        match self {
            CorpusDensity::BimodalPoly(_) => json!({
                "id": "bimodal-poly",
                "formula": "-21/8 (x-1)(x+1)(x^4-x^3+x^2)",
            }),
            CorpusDensity::MultimodalGauss(g) => json!({
                "id": "multimodal-gauss",
                "seed": g.seed(),
                "modes": g.means().len(),
                "means": g.means(),
                "weights": g.weights(),
                "sigma": g.sigma(),
                "normalization": "truncated to [-1, 1] and renormalized",
            }),
            CorpusDensity::AsymUniform(_) => json!({
                "id": "asym-uniform",
                "plateaus": [{"from": AsymUniform::LOWER, "to": AsymUniform::UPPER, "height": 1.0 / 1.4}],
                "breakpoints": [AsymUniform::LOWER, AsymUniform::UPPER],
            }),
            CorpusDensity::Sigmoid(_) => json!({
                "id": "sigmoid",
                "formula": "1/(1+exp(-5x))",
            }),
            CorpusDensity::SpectralExact(s) => json!({
                "id": "spectral-exact",
                "dim": s.problem.dim(),
                "map": [s.map.lower(), s.map.upper()],
                "sigma": s.sigma,
                "sigma_mapped": s.mixture.sigma(),
                "kernel": "gaussian",
                "leakage": s.mixture.mass_outside_unit_interval(),
            }),
        }
    }
}

impl Density for CorpusDensity {
    fn pdf(&self, x: f64) -> f64 {
        self.inner().pdf(x)
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.inner().breakpoints()
    }

    fn split_hints(&self) -> Vec<f64> {
        self.inner().split_hints()
    }

    fn pdf_mp(&self, x: &BigFloat, ctx: &mut MpContext) -> Option<BigFloat> {
        self.inner().pdf_mp(x, ctx)
    }

    fn exact_moments(&self, order: usize) -> Option<MomentVector> {
        self.inner().exact_moments(order)
    }

    fn moments_mp(&self, order: usize, ctx: &mut MpContext) -> Option<Vec<BigFloat>> {
        self.inner().moments_mp(order, ctx)
    }

    fn direct_expectations(&self, order: usize) -> Option<ChebyshevExpectations> {
        self.inner().direct_expectations(order)
    }

    fn pdf_bound(&self) -> Option<f64> {
        self.inner().pdf_bound()
    }

    fn sample(&self, count: usize, rng: &mut dyn RngCore) -> Option<Vec<f64>> {
        match self.inner().sample(count, rng) {
            Some(s) => Some(s),
            None => {
                let bound = self.pdf_bound()?;
                Some(rejection_sample(|x| self.pdf(x), -1.0, 1.0, bound, count, rng))
            }
        }
    }
}
