//! The closed-form density estimate and its grid evaluation.
//!
//! `f(x) = [<T_0> + 2 sum_{n>=1} <T_n> T_n(x)] / (pi sqrt(1 - x^2))` on `(-1, 1)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::chebyshev::{clenshaw, naive_series};
use crate::domain::AffineDomainMap;
use crate::error::{Error, Result};
use crate::moments::ChebyshevExpectations;
use crate::warning::Warning;

/// Number of points in the default evaluation grid.
pub const DEFAULT_GRID_POINTS: usize = 2001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridKind {
    /// Gauss-Chebyshev nodes `cos(pi (j + 1/2) / M)`, in increasing order.
    ChebyshevInterior,
    /// Cell midpoints of `M` equal cells covering `[-1, 1]`.
    UniformInterior,
    Custom,
}

/// Ordered abscissae strictly inside `(-1, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    kind: GridKind,
    points: Vec<f64>,
}

impl Grid {
    pub fn chebyshev(m: usize) -> Self {
        let points = (0..m)
            .map(|j| -(PI * (j as f64 + 0.5) / m as f64).cos())
            .collect();
        Grid {
            kind: GridKind::ChebyshevInterior,
            points,
        }
    }

    pub fn uniform(m: usize) -> Self {
        let h = 2.0 / m as f64;
        let points = (0..m).map(|j| -1.0 + (j as f64 + 0.5) * h).collect();
        Grid {
            kind: GridKind::UniformInterior,
            points,
        }
    }

    pub fn custom(points: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = points.iter().find(|x| !(x.abs() < 1.0)) {
            return Err(Error::Domain {
                value: bad,
                domain: "(-1, 1)",
            });
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "grid must be strictly increasing".into(),
            ));
        }
        Ok(Grid {
            kind: GridKind::Custom,
            points,
        })
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points with `|x| <= limit`, as a custom grid.
    pub fn restricted(&self, limit: f64) -> Grid {
        Grid {
            kind: GridKind::Custom,
            points: self
                .points
                .iter()
                .copied()
                .filter(|x| x.abs() <= limit)
                .collect(),
        }
    }

    /// Quadrature weights of the cells around each point; the outer cells
    /// extend to the interval ends.
    pub fn cell_widths(&self) -> Vec<f64> {
        let n = self.points.len();
        (0..n)
            .map(|j| {
                let left = if j == 0 {
                    -1.0
                } else {
                    0.5 * (self.points[j - 1] + self.points[j])
                };
                let right = if j + 1 == n {
                    1.0
                } else {
                    0.5 * (self.points[j] + self.points[j + 1])
                };
                right - left
            })
            .collect()
    }

    /// `int_{-1}^{1} f dx` from samples on the grid: Gauss-Chebyshev on the
    /// Chebyshev grid, cell-width (midpoint) quadrature otherwise.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        match self.kind {
            GridKind::ChebyshevInterior => {
                let m = self.points.len() as f64;
                PI / m
                    * self
                        .points
                        .iter()
                        .zip(values)
                        .map(|(x, f)| f * (1.0 - x * x).sqrt())
                        .sum::<f64>()
            }
            _ => self
                .cell_widths()
                .iter()
                .zip(values)
                .map(|(w, f)| w * f)
                .sum(),
        }
    }
}

impl Default for Grid {
    fn default() -> Self {
        Grid::chebyshev(DEFAULT_GRID_POINTS)
    }
}

/// Which estimator produced a density.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum Method {
    Jade { order: usize },
    GramCharlier { cumulants: usize },
    Kde { samples: usize, bandwidth: f64 },
    ExactOracle,
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::Jade { .. } => "jade",
            Method::GramCharlier { .. } => "gram-charlier",
            Method::Kde { .. } => "kde",
            Method::ExactOracle => "exact-oracle",
        }
    }

    /// Tag plus the defining count, e.g. `jade-20`.
    pub fn label(&self) -> String {
        match self {
            Method::Jade { order } => format!("jade-{order}"),
            Method::GramCharlier { cumulants } => format!("gram-charlier-{cumulants}"),
            Method::Kde { samples, .. } => format!("kde-{samples}"),
            Method::ExactOracle => "exact-oracle".into(),
        }
    }
}

/// Density samples on a grid in `(-1, 1)` together with their provenance.
#[derive(Debug, Clone, Serialize)]
pub struct DensityEstimate {
    pub method: Method,
    pub expectations: Option<ChebyshevExpectations>,
    pub grid: Grid,
    pub values: Vec<f64>,
    pub domain_map: AffineDomainMap,
    pub warnings: Vec<Warning>,
}

impl DensityEstimate {
    pub fn new(method: Method, grid: Grid, values: Vec<f64>, domain_map: AffineDomainMap) -> Self {
        DensityEstimate {
            method,
            expectations: None,
            grid,
            values,
            domain_map,
            warnings: Vec::new(),
        }
    }

    /// Mass over `(-1, 1)` by the grid quadrature.
    pub fn mass(&self) -> f64 {
        self.grid.integrate(&self.values)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Abscissae and density values in physical units.
    pub fn physical(&self) -> (Vec<f64>, Vec<f64>) {
        let jac = self.domain_map.jacobian();
        let x = self
            .grid
            .points()
            .iter()
            .map(|&y| self.domain_map.inverse(y))
            .collect();
        let f = self.values.iter().map(|v| v * jac).collect();
        (x, f)
    }

    /// Sets negative values to zero and rescales to unit mass.
    pub fn clip_and_renormalize(&mut self) {
        self.values.iter_mut().for_each(|v| *v = v.max(0.0));
        let mass = self.mass();
        if mass > 0.0 {
            self.values.iter_mut().for_each(|v| *v /= mass);
        }
        self.warnings
            .retain(|w| !matches!(w, Warning::NegativeDensity { .. }));
    }
}

/// Summation route for the Chebyshev series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Summation {
    #[default]
    Clenshaw,
    Naive,
}

/// The closed-form estimate at a single point of `(-1, 1)`.
pub fn jade_density(c: &ChebyshevExpectations, x: f64) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::Domain {
            value: x,
            domain: "(-1, 1)",
        });
    }
    Ok(clenshaw(&c.series_coefficients(), x) / (PI * (1.0 - x * x).sqrt()))
}

pub fn jade_density_grid(
    c: &ChebyshevExpectations,
    grid: &Grid,
    map: &AffineDomainMap,
) -> DensityEstimate {
    jade_density_grid_with(c, grid, map, Summation::Clenshaw)
}

pub fn jade_density_grid_with(
    c: &ChebyshevExpectations,
    grid: &Grid,
    map: &AffineDomainMap,
    summation: Summation,
) -> DensityEstimate {
    let coeffs = c.series_coefficients();
    let values: Vec<f64> = grid
        .points()
        .iter()
        .map(|&x| {
            let s = match summation {
                Summation::Clenshaw => clenshaw(&coeffs, x),
                Summation::Naive => naive_series(&coeffs, x),
            };
            s / (PI * (1.0 - x * x).sqrt())
        })
        .collect();
    let mut est = DensityEstimate::new(
        Method::Jade { order: c.order() },
        grid.clone(),
        values,
        *map,
    );
    let min = est.min();
    if min < 0.0 {
        est.warnings.push(Warning::NegativeDensity { min });
    }
    est.warnings.extend(c.warnings().iter().cloned());
    est.expectations = Some(c.clone());
    est
}

/// Chebyshev sum `pi sqrt(1 - x^2) f(x)`, which stays bounded up to the
/// endpoints.
pub fn chebyshev_sum(c: &ChebyshevExpectations, x: f64) -> f64 {
    clenshaw(&c.series_coefficients(), x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_term_is_arcsine_peak() {
        let c = ChebyshevExpectations::arcsine(0);
        assert!((jade_density(&c, 0.0).unwrap() - 1.0 / PI).abs() < 1e-16);
    }

    #[test]
    fn point_mass_two_terms() {
        let c = ChebyshevExpectations::new(vec![1.0, 0.0, -1.0]);
        assert!((jade_density(&c, 0.0).unwrap() - 3.0 / PI).abs() < 1e-15);
        let grid = Grid::custom(vec![0.0]).unwrap();
        let est = jade_density_grid(&c, &grid, &AffineDomainMap::identity());
        assert!((est.values[0] - 3.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn endpoints_are_rejected() {
        let c = ChebyshevExpectations::arcsine(3);
        assert!(jade_density(&c, 1.0).is_err());
        assert!(jade_density(&c, -1.0).is_err());
        assert!(jade_density(&c, f64::NAN).is_err());
    }

    #[test]
    fn symmetric_grid_gives_symmetric_values() {
        let c = ChebyshevExpectations::arcsine(0);
        let est = jade_density_grid(&c, &Grid::chebyshev(101), &AffineDomainMap::identity());
        let n = est.values.len();
        for j in 0..n / 2 {
            assert!((est.values[j] - est.values[n - 1 - j]).abs() < 1e-12);
        }
    }

    #[test]
    fn grids_are_interior_and_increasing() {
        for g in [Grid::chebyshev(2001), Grid::uniform(2001)] {
            assert!(g.points().iter().all(|x| x.abs() < 1.0));
            assert!(g.points().windows(2).all(|w| w[0] < w[1]));
        }
        assert!(Grid::custom(vec![0.0, 0.0]).is_err());
        assert!(Grid::custom(vec![-1.0, 0.0]).is_err());
        let w: f64 = Grid::uniform(10).cell_widths().iter().sum();
        assert!((w - 2.0).abs() < 1e-15);
    }

    #[test]
    fn physical_units_apply_jacobian() {
        let map = AffineDomainMap::new(0.0, 4.0).unwrap();
        let c = ChebyshevExpectations::arcsine(0);
        let est = jade_density_grid(&c, &Grid::custom(vec![0.0]).unwrap(), &map);
        let (x, f) = est.physical();
        assert_eq!(x, vec![2.0]);
        assert!((f[0] - 0.5 / PI).abs() < 1e-16);
    }

    #[test]
    fn clipping_removes_negatives_and_renormalizes() {
        let c = ChebyshevExpectations::new(vec![1.0, 0.9, 0.0, -0.8]);
        let mut est = jade_density_grid(&c, &Grid::default(), &AffineDomainMap::identity());
        assert!(est.min() < 0.0);
        est.clip_and_renormalize();
        assert!(est.min() >= 0.0);
        assert!((est.mass() - 1.0).abs() < 1e-12);
    }
}
