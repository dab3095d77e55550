//! Jacobi-Anger density estimation.
//!
//! A density on `[-1, 1]` is reconstructed from its first `N + 1` moments
//! through the closed form
//!
//! ```text
//! f_N(x) = [<T_0> + 2 sum_{n=1}^{N} <T_n> T_n(x)] / (pi sqrt(1 - x^2))
//! ```
//!
//! where `<T_n>` are the expectations of the Chebyshev polynomials. Moments
//! come from analytic densities, sample sets or Hermitian operators; other
//! intervals are handled by an affine map.
//!
//! ```
//! use jade::{arcsine_moments, jade_density, moments_to_chebyshev};
//!
//! let c = moments_to_chebyshev(&arcsine_moments(20), 20).unwrap();
//! let f = jade_density(&c, 0.5).unwrap();
//! assert!((f - 1.0 / (std::f64::consts::PI * 0.75f64.sqrt())).abs() < 1e-12);
//! ```

pub mod baselines;
pub mod bessel;
pub mod characteristic;
pub mod chebyshev;
pub mod commands;
pub mod comparison;
pub mod corpus;
pub mod density;
pub mod domain;
pub mod error;
pub mod estimator;
pub mod goldens;
pub mod io;
pub mod metrics;
pub mod moments;
pub mod mp;
pub mod projection;
pub mod quadrature;
pub mod sources;
pub mod spectral;
pub mod warning;

pub use baselines::{
    gram_charlier, kde_gaussian, moments_to_cumulants, Bandwidth, CumulantVector, GramCharlier, Kde,
};
pub use bessel::bessel_j;
pub use characteristic::{characteristic_function, inverse_ft_consistency, CharacteristicFunction, FourierTail};
pub use chebyshev::{chebyshev_coefficient_matrix, eval_chebyshev, ChebCoeffMatrix};
pub use comparison::{compare, spectrum_convergence, CompareOptions, MethodSpec, SpectrumOptions};
pub use corpus::{CorpusConfig, CorpusDensity, CorpusId};
pub use density::Density;
pub use domain::AffineDomainMap;
pub use error::{Error, Result};
pub use estimator::{jade_density, jade_density_grid, DensityEstimate, Grid, Method};
pub use metrics::{ComparisonReport, Metrics};
pub use moments::{
    arcsine_moments, moments_to_chebyshev, rescale_moments, uniform_moments, ChebyshevExpectations, MomentVector,
    Precision,
};
pub use projection::projection_coefficients;
pub use sources::{moments_from_pdf, moments_from_samples, QuadratureConfig};
pub use spectral::{
    estimate_spectral_bounds, exact_spectral_density, hamiltonian_chebyshev_expectations, hamiltonian_moments,
    SpectralProblem,
};
pub use warning::Warning;
