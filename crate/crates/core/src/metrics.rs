//! Error metrics between densities sampled on a shared grid, and the
//! comparison report built from them.

use serde::Serialize;

use crate::domain::AffineDomainMap;
use crate::estimator::{DensityEstimate, Grid, GridKind, Method};
use crate::moments::Precision;
use crate::warning::Warning;

/// Distances between two densities on `(-1, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metrics {
    pub l1: f64,
    pub l2: f64,
    /// `sqrt(int (f - g)^2 sqrt(1 - x^2) dx)`.
    pub weighted_l2: f64,
    pub max_abs: f64,
}

impl Metrics {
    /// Metrics of `values - reference`, integrated with the grid's own
    /// quadrature.
    pub fn between(grid: &Grid, values: &[f64], reference: &[f64]) -> Self {
        assert_eq!(values.len(), grid.len());
        assert_eq!(reference.len(), grid.len());
        let diff: Vec<f64> = values.iter().zip(reference).map(|(a, b)| a - b).collect();
        let abs: Vec<f64> = diff.iter().map(|d| d.abs()).collect();
        let sq: Vec<f64> = diff.iter().map(|d| d * d).collect();
        let weighted: Vec<f64> = sq
            .iter()
            .zip(grid.points())
            .map(|(s, x)| s * (1.0 - x * x).sqrt())
            .collect();
        Metrics {
            l1: grid.integrate(&abs),
            l2: grid.integrate(&sq).sqrt(),
            weighted_l2: grid.integrate(&weighted).sqrt(),
            max_abs: abs.iter().copied().fold(0.0, f64::max),
        }
    }
}

/// Grid description echoed in reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub kind: GridKind,
    pub points: usize,
    /// Physical interval mapped onto `[-1, 1]`.
    pub domain: [f64; 2],
}

impl GridSpec {
    pub fn new(grid: &Grid, map: &AffineDomainMap) -> Self {
        GridSpec {
            kind: grid.kind(),
            points: grid.len(),
            domain: [map.lower(), map.upper()],
        }
    }
}

/// Transform diagnostics of a moment-based estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrecisionDiagnostics {
    pub amplification_log10: f64,
    pub digits: Option<u32>,
    pub exact: bool,
}

impl PrecisionDiagnostics {
    pub fn new(amplification_log10: f64, precision: Precision) -> Self {
        PrecisionDiagnostics {
            amplification_log10,
            digits: precision.digits(),
            exact: precision == Precision::Exact,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodReport {
    pub label: String,
    pub method: Method,
    pub metrics: Metrics,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<PrecisionDiagnostics>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
    /// Locations of the largest discrete-gradient magnitudes, when the
    /// reference has jumps.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jump_locations: Option<Vec<f64>>,
    pub warnings: Vec<Warning>,
}

impl MethodReport {
    pub fn new(estimate: &DensityEstimate, reference: &[f64]) -> Self {
        let precision = estimate
            .expectations
            .as_ref()
            .map(|c| PrecisionDiagnostics::new(c.amplification_log10(), c.precision_used()));
        MethodReport {
            label: estimate.method.label(),
            method: estimate.method.clone(),
            metrics: Metrics::between(&estimate.grid, &estimate.values, reference),
            precision,
            wall_time_ms: None,
            jump_locations: None,
            warnings: estimate.warnings.clone(),
        }
    }
}

/// A method that could not run against the reference.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Skipped {
    pub method: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub reference: String,
    pub grid: GridSpec,
    pub methods: Vec<MethodReport>,
    pub skipped: Vec<Skipped>,
    pub warnings: Vec<Warning>,
}

impl ComparisonReport {
    pub fn method(&self, label: &str) -> Option<&MethodReport> {
        self.methods.iter().find(|m| m.label == label)
    }
}

/// Positions of the `count` largest `|f_{j+1} - f_j| / (x_{j+1} - x_j)`,
/// reported at cell midpoints and separated by at least `min_separation`,
/// in decreasing order of magnitude.
pub fn steepest_jumps(points: &[f64], values: &[f64], count: usize, min_separation: f64) -> Vec<f64> {
    let mut slopes: Vec<(f64, f64)> = points
        .windows(2)
        .zip(values.windows(2))
        .map(|(x, f)| (((f[1] - f[0]) / (x[1] - x[0])).abs(), 0.5 * (x[0] + x[1])))
        .collect();
    slopes.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut found: Vec<f64> = Vec::new();
    for (_, at) in slopes {
        if found.len() == count {
            break;
        }
        if found.iter().all(|f| (f - at).abs() >= min_separation) {
            found.push(at);
        }
    }
    found
}
