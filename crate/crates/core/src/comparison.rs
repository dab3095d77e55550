//! Estimators run side by side against a known density, and the
//! convergence study of a spectral problem.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::baselines::{gram_charlier_grid, kde_grid, moments_to_cumulants, Bandwidth, CumulantVector};
use crate::corpus::CorpusDensity;
use crate::density::Density;
use crate::domain::AffineDomainMap;
use crate::error::{Error, Result};
use crate::estimator::{jade_density_grid, DensityEstimate, Grid, Method, DEFAULT_GRID_POINTS};
use crate::metrics::{steepest_jumps, ComparisonReport, GridSpec, Metrics, MethodReport, PrecisionDiagnostics, Skipped};
use crate::moments::{default_precision_digits, ChebyshevExpectations};
use crate::sources::{moments_from_pdf, QuadratureConfig};
use crate::spectral::{
    broadened_chebyshev_expectations, estimate_spectral_bounds, exact_spectral_density,
    hamiltonian_chebyshev_expectations, SpectralProblem, SpectralReference, DEFAULT_SPECTRAL_MARGIN,
};
use crate::warning::Warning;

/// Number of samples the kernel density estimate draws by default.
pub const DEFAULT_KDE_SAMPLES: usize = 10_000;

/// Cumulant count of the default Gram-Charlier baseline.
pub const DEFAULT_CUMULANTS: usize = 10;

/// Digits used for the low-order moments feeding the cumulants.
const CUMULANT_DIGITS: u32 = 32;

/// An estimator with its defining count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodSpec {
    /// `None` means the reference's benchmark order.
    Jade { order: Option<usize> },
    GramCharlier { cumulants: usize },
    Kde { samples: usize },
    Exact,
}

impl MethodSpec {
    pub fn defaults() -> Vec<MethodSpec> {
        vec![
            MethodSpec::Jade { order: None },
            MethodSpec::GramCharlier {
                cumulants: DEFAULT_CUMULANTS,
            },
            MethodSpec::Kde {
                samples: DEFAULT_KDE_SAMPLES,
            },
        ]
    }
}

impl fmt::Display for MethodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodSpec::Jade { order: None } => f.write_str("jade"),
            MethodSpec::Jade { order: Some(n) } => write!(f, "jade:{n}"),
            MethodSpec::GramCharlier { cumulants } => write!(f, "gram-charlier:{cumulants}"),
            MethodSpec::Kde { samples } => write!(f, "kde:{samples}"),
            MethodSpec::Exact => f.write_str("exact"),
        }
    }
}

/// Parses `jade[:N]`, `gram-charlier[:M]` (or `gc`), `kde[:samples]` and
/// `exact`.
impl FromStr for MethodSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, count) = match s.split_once(':') {
            Some((n, c)) => {
                let c = c
                    .parse::<usize>()
                    .map_err(|_| Error::UnknownMethod(s.to_string()))?;
                (n, Some(c))
            }
            None => (s, None),
        };
        match name {
            "jade" => Ok(MethodSpec::Jade { order: count }),
            "gram-charlier" | "gc" => Ok(MethodSpec::GramCharlier {
                cumulants: count.unwrap_or(DEFAULT_CUMULANTS),
            }),
            "kde" => Ok(MethodSpec::Kde {
                samples: count.unwrap_or(DEFAULT_KDE_SAMPLES),
            }),
            "exact" if count.is_none() => Ok(MethodSpec::Exact),
            _ => Err(Error::UnknownMethod(s.to_string())),
        }
    }
}

/// Half-width of the interior window searched for jumps.
pub const JUMP_WINDOW: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareOptions {
    pub grid_points: usize,
    /// Transform precision for JADE; `4N` digits when absent.
    pub precision_digits: Option<u32>,
    /// Seed of the KDE sampler.
    pub seed: u64,
    pub timings: bool,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions {
            grid_points: DEFAULT_GRID_POINTS,
            precision_digits: None,
            seed: 42,
            timings: false,
        }
    }
}

/// A fitted estimator, ready to be evaluated on any grid.
#[derive(Debug, Clone)]
pub enum Fitted {
    Jade(ChebyshevExpectations),
    GramCharlier(CumulantVector),
    Kde(Vec<f64>),
    Exact,
}

impl Fitted {
    pub fn fit(reference: &CorpusDensity, spec: MethodSpec, options: &CompareOptions) -> Result<std::result::Result<Fitted, String>> {
        Ok(Ok(match spec {
            MethodSpec::Jade { order } => {
                let n = order.unwrap_or(reference.id().paper_order());
                let digits = options.precision_digits.unwrap_or(default_precision_digits(n));
                Fitted::Jade(reference.expectations(n, digits)?)
            }
            MethodSpec::GramCharlier { cumulants } => {
                let m = moments_from_pdf(
                    reference,
                    (-1.0, 1.0),
                    cumulants,
                    QuadratureConfig::with_digits(CUMULANT_DIGITS),
                )?;
                let k = moments_to_cumulants(&m, cumulants)?;
                if !(k.len() >= 2 && k.kappa(2) > 0.0) {
                    return Ok(Err("variance is not positive".into()));
                }
                Fitted::GramCharlier(k)
            }
            MethodSpec::Kde { samples } => {
                if samples < 2 {
                    return Err(Error::InvalidParameter(format!(
                        "KDE needs at least 2 samples, got {samples}"
                    )));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
                match reference.sample(samples, &mut rng) {
                    Some(s) => Fitted::Kde(s),
                    None => return Ok(Err("reference has no sampler".into())),
                }
            }
            MethodSpec::Exact => Fitted::Exact,
        }))
    }

    pub fn evaluate(&self, reference: &CorpusDensity, grid: &Grid, map: &AffineDomainMap) -> Result<DensityEstimate> {
        match self {
            Fitted::Jade(c) => Ok(jade_density_grid(c, grid, map)),
            Fitted::GramCharlier(k) => gram_charlier_grid(k, grid, map),
            Fitted::Kde(s) => kde_grid(s, Bandwidth::Silverman, grid, map),
            Fitted::Exact => Ok(reference_estimate(reference, grid, map)),
        }
    }
}

/// The reference density itself, sampled on the grid.
pub fn reference_estimate(reference: &CorpusDensity, grid: &Grid, map: &AffineDomainMap) -> DensityEstimate {
    let values = grid.points().iter().map(|&x| reference.pdf(x)).collect();
    DensityEstimate::new(Method::ExactOracle, grid.clone(), values, *map)
}

/// Physical interval behind a corpus density's `[-1, 1]`.
pub fn corpus_map(reference: &CorpusDensity) -> AffineDomainMap {
    match reference {
        CorpusDensity::SpectralExact(case) => case.map,
        _ => AffineDomainMap::identity(),
    }
}

/// Estimates and metrics of one comparison.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub report: ComparisonReport,
    pub reference: DensityEstimate,
    pub estimates: Vec<DensityEstimate>,
}

/// Runs each method against `reference` on the Chebyshev grid. When the
/// reference has jumps, the steepest slopes of each estimate on a uniform
/// grid of the same size are reported as well.
///
/// The search skips `|x| > JUMP_WINDOW`: there the Chebyshev sum is divided
/// by `sqrt(1 - x^2)`, which magnifies its truncation residual into slopes
/// steeper than any interior jump.
pub fn compare(reference: &CorpusDensity, specs: &[MethodSpec], options: &CompareOptions) -> Result<Comparison> {
    if specs.is_empty() {
        return Err(Error::InvalidParameter("no methods to compare".into()));
    }
    let grid = Grid::chebyshev(options.grid_points);
    let map = corpus_map(reference);
    let truth = reference_estimate(reference, &grid, &map);
    let breakpoints = reference.breakpoints();
    let uniform = Grid::uniform(options.grid_points).restricted(JUMP_WINDOW);

    let mut methods = Vec::new();
    let mut estimates = Vec::new();
    let mut skipped = Vec::new();
    for &spec in specs {
        let start = Instant::now();
        let fitted = match Fitted::fit(reference, spec, options)? {
            Ok(f) => f,
            Err(reason) => {
                skipped.push(Skipped {
                    method: spec.to_string(),
                    reason,
                });
                continue;
            }
        };
        let estimate = fitted.evaluate(reference, &grid, &map)?;
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        let mut row = MethodReport::new(&estimate, &truth.values);
        if options.timings {
            row.wall_time_ms = Some(elapsed);
        }
        if !breakpoints.is_empty() {
            let on_uniform = fitted.evaluate(reference, &uniform, &map)?;
            let jumps = steepest_jumps(uniform.points(), &on_uniform.values, breakpoints.len(), 0.1);
            row.jump_locations = Some(jumps.iter().map(|&y| map.inverse(y)).collect());
        }
        methods.push(row);
        estimates.push(estimate);
    }
    let mut warnings = Vec::new();
    if let CorpusDensity::SpectralExact(case) = reference {
        let leakage = case.mixture.mass_outside_unit_interval();
        if leakage > 1e-6 {
            warnings.push(Warning::TailLeakage { mass_outside: leakage });
        }
    }
    Ok(Comparison {
        report: ComparisonReport {
            reference: reference.id().to_string(),
            grid: GridSpec::new(&grid, &map),
            methods,
            skipped,
            warnings,
        },
        reference: truth,
        estimates,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumOptions {
    /// Kernel width in physical units; `sigma_fraction` of the mapped
    /// interval width when absent.
    pub sigma: Option<f64>,
    pub sigma_fraction: f64,
    pub margin: f64,
    pub orders: Vec<usize>,
    pub grid_points: usize,
    /// Reconstruct the broadened distribution (default) rather than the
    /// bare spectral measure.
    pub broadened: bool,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            sigma: None,
            sigma_fraction: crate::corpus::DEFAULT_SIGMA_FRACTION,
            margin: DEFAULT_SPECTRAL_MARGIN,
            orders: vec![20, 50, 100],
            grid_points: DEFAULT_GRID_POINTS,
            broadened: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub order: usize,
    pub metrics: Metrics,
    pub mass: f64,
    pub precision: PrecisionDiagnostics,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub dimension: usize,
    pub map: [f64; 2],
    pub margin: f64,
    pub sigma: f64,
    pub sigma_mapped: f64,
    pub leakage: f64,
    pub broadened: bool,
    pub grid: GridSpec,
    pub convergence: Vec<ConvergenceRow>,
    pub warnings: Vec<Warning>,
}

#[derive(Debug, Clone)]
pub struct SpectrumRun {
    pub reference: SpectralReference,
    pub estimates: Vec<DensityEstimate>,
    pub report: SpectrumReport,
}

/// JADE reconstructions of the state's energy distribution at each order,
/// from the Chebyshev recurrence, against the Gaussian-broadened
/// distribution from exact diagonalization.
pub fn spectrum_convergence(p: &SpectralProblem, options: &SpectrumOptions) -> Result<SpectrumRun> {
    if options.orders.is_empty() {
        return Err(Error::InvalidParameter("no orders requested".into()));
    }
    let map = estimate_spectral_bounds(p, options.margin);
    let sigma = options
        .sigma
        .unwrap_or(options.sigma_fraction * (map.upper() - map.lower()));
    let grid = Grid::chebyshev(options.grid_points);
    let reference = exact_spectral_density(p, &map, sigma, &grid)?;
    let max_order = *options.orders.iter().max().expect("nonempty");
    let all = if options.broadened {
        broadened_chebyshev_expectations(p, &map, reference.sigma_mapped, max_order)?
    } else {
        hamiltonian_chebyshev_expectations(p, &map, max_order)?
    };

    let mut estimates = Vec::new();
    let mut convergence = Vec::new();
    let mut warnings = reference.estimate.warnings.clone();
    for &n in &options.orders {
        let c = all.truncated(n)?;
        let est = jade_density_grid(&c, &grid, &map);
        warnings.extend(c.warnings().iter().cloned());
        convergence.push(ConvergenceRow {
            order: n,
            metrics: Metrics::between(&grid, &est.values, &reference.estimate.values),
            mass: est.mass(),
            precision: PrecisionDiagnostics::new(c.amplification_log10(), c.precision_used()),
        });
        estimates.push(est);
    }
    warnings.dedup();
    let report = SpectrumReport {
        dimension: p.dim(),
        map: [map.lower(), map.upper()],
        margin: options.margin,
        sigma,
        sigma_mapped: reference.sigma_mapped,
        leakage: reference.leakage,
        broadened: options.broadened,
        grid: GridSpec::new(&grid, &map),
        convergence,
        warnings,
    };
    Ok(SpectrumRun {
        reference,
        estimates,
        report,
    })
}
