//! Comparison estimators: the Gram-Charlier A series built from cumulants,
//! and Gaussian kernel density estimation from samples.

pub mod cumulants;
pub mod gram_charlier;
pub mod kde;

pub use cumulants::{cumulants_to_moments, moments_to_cumulants, CumulantVector, CUMULANT_CAP};
pub use gram_charlier::{gram_charlier, gram_charlier_grid, GramCharlier};
pub use kde::{kde_gaussian, kde_grid, silverman_bandwidth, Bandwidth, Kde};
