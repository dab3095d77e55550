use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("argument {value} outside the domain {domain}")]
    Domain { value: f64, domain: &'static str },

    #[error("degenerate interval [{a}, {b}]: lower bound must be strictly below upper bound")]
    DegenerateInterval { a: f64, b: f64 },

    #[error("moments must be given on [-1, 1], got [{a}, {b}]; rescale them first")]
    NotNormalizedDomain { a: f64, b: f64 },

    #[error("requested order {requested} but only {available} moments beyond the zeroth are available")]
    InsufficientMoments { requested: usize, available: usize },

    #[error("quadrature did not converge on [{lo}, {hi}] (residual {residual:e})")]
    QuadratureNonConvergence { lo: f64, hi: f64, residual: f64 },

    #[error("empty sample set")]
    EmptySamples,

    #[error("{count} samples lie outside [{a}, {b}] (first offenders: {offenders:?})")]
    SamplesOutsideDomain {
        a: f64,
        b: f64,
        count: usize,
        offenders: Vec<f64>,
    },

    #[error("operator is not Hermitian (max |H - H^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("state is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("dimension mismatch: operator is {dim}x{dim} but state has length {state_len}")]
    DimensionMismatch { dim: usize, state_len: usize },

    #[error("dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("imaginary residue {residue:e} at order {order} exceeds tolerance")]
    ImaginaryResidue { order: usize, residue: f64 },

    #[error(
        "spectrum escaped [-1, 1]: |<T_{order}>| = {value} > 1 + 1e-6; \
         widen the domain map (larger spectral margin)"
    )]
    SpectrumEscape { order: usize, value: f64 },

    #[error("eigendecomposition failed")]
    Diagonalization,

    #[error("cumulant kappa_2 = {kappa2} must be positive")]
    NonPositiveVariance { kappa2: f64 },

    #[error("at most {cap} cumulants are supported, {requested} requested")]
    CumulantCap { requested: usize, cap: usize },

    #[error("sample deviation is zero; Silverman's rule needs spread, pass an explicit bandwidth")]
    ZeroDeviation,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown corpus density `{0}`")]
    UnknownDensity(String),

    #[error("unknown method `{0}`")]
    UnknownMethod(String),

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error("multiprecision arithmetic failed: {0}")]
    Multiprecision(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
