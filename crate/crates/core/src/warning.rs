use std::fmt;

use serde::Serialize;

/// Non-fatal diagnostics attached to results. Estimation always proceeds;
/// callers decide whether to surface or act on these.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Warning {
    /// `mu'_0` differs from one.
    Normalization { mu0: f64 },
    /// A moment on `[-1, 1]` exceeds one in magnitude.
    MomentOutOfRange { index: usize, value: f64 },
    /// A Chebyshev expectation exceeds one in magnitude.
    ExpectationOutOfRange { order: usize, value: f64 },
    /// The transform amplifies input errors beyond the digits carried.
    PrecisionShortfall {
        order: usize,
        amplification_log10: f64,
        digits: u32,
    },
    /// Moments arrived as binary floating-point numbers.
    BinaryFloatInput { count: usize },
    /// The estimate has negative values (truncation artifact).
    NegativeDensity { min: f64 },
    /// Reference mass lying outside the mapped interval.
    TailLeakage { mass_outside: f64 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::Normalization { mu0 } => {
                write!(f, "zeroth moment is {mu0}, not 1; distribution is not normalized")
            }
            Warning::MomentOutOfRange { index, value } => {
                write!(f, "moment {index} = {value} exceeds 1 in magnitude on [-1, 1]")
            }
            Warning::ExpectationOutOfRange { order, value } => {
                write!(f, "<T_{order}> = {value} exceeds 1 in magnitude (noisy or invalid moments)")
            }
            Warning::PrecisionShortfall {
                order,
                amplification_log10,
                digits,
            } => write!(
                f,
                "order {order} amplifies moment errors by 10^{amplification_log10:.1} \
                 but only {digits} digits are available"
            ),
            Warning::BinaryFloatInput { count } => {
                write!(f, "{count} moments given as binary floats; precision is limited to ~16 digits")
            }
            Warning::NegativeDensity { min } => {
                write!(f, "estimate takes negative values (min {min:e})")
            }
            Warning::TailLeakage { mass_outside } => {
                write!(f, "reference mass {mass_outside:e} lies outside the mapped interval")
            }
        }
    }
}
