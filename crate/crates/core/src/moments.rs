//! Raw moment vectors and the monomial-to-Chebyshev transform.
//!
//! Moments are stored as exact rationals whatever their origin: decimal
//! strings, binary floats and multiprecision quadrature results are all
//! exactly representable. The transform `<T_n> = sum_m c_{n,m} mu'_m` is then
//! carried out in exact integer arithmetic, so the only precision loss is
//! the one already present in the inputs. `Precision` records how many of
//! the input digits are meaningful.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::chebyshev::ChebCoeffMatrix;
use crate::domain::{rational_from_f64, AffineDomainMap};
use crate::error::{Error, Result};
use crate::warning::Warning;

/// Meaningful digits of a moment vector or of a derived quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Precision {
    Exact,
    Digits(u32),
}

impl Precision {
    pub fn digits(&self) -> Option<u32> {
        match self {
            Precision::Exact => None,
            Precision::Digits(d) => Some(*d),
        }
    }

    /// The lower of two precisions.
    pub fn min(self, other: Precision) -> Precision {
        match (self, other) {
            (Precision::Exact, p) | (p, Precision::Exact) => p,
            (Precision::Digits(a), Precision::Digits(b)) => Precision::Digits(a.min(b)),
        }
    }
}

/// Default working precision for an order-`n` transform: `4n` digits.
///
/// The amplification `sum_m |c_{n,m}|` grows like `(1 + sqrt 2)^n`, about
/// `10^{0.383 n}`, so this leaves more than `3n` digits of headroom.
pub fn default_precision_digits(order: usize) -> u32 {
    (4 * order).max(32) as u32
}

/// Raw moments `mu'_0..mu'_N` of a random variable supported on `domain`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentVector {
    values: Vec<BigRational>,
    domain: (f64, f64),
    precision: Precision,
    binary_inputs: usize,
    standard_errors: Option<Vec<f64>>,
}

impl MomentVector {
    pub fn new(values: Vec<BigRational>, domain: (f64, f64), precision: Precision) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InsufficientMoments {
                requested: 0,
                available: 0,
            });
        }
        AffineDomainMap::new(domain.0, domain.1)?;
        Ok(MomentVector {
            values,
            domain,
            precision,
            binary_inputs: 0,
            standard_errors: None,
        })
    }

    pub fn exact(values: Vec<BigRational>, domain: (f64, f64)) -> Result<Self> {
        Self::new(values, domain, Precision::Exact)
    }

    /// Moments given as binary floats. They are flagged: a double carries
    /// fewer than 16 significant digits.
    pub fn from_f64(values: &[f64], domain: (f64, f64)) -> Result<Self> {
        let rationals = values
            .iter()
            .map(|&v| {
                BigRational::from_float(v).ok_or_else(|| {
                    Error::InvalidParameter(format!("non-finite moment value {v}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut m = Self::new(rationals, domain, Precision::Digits(15))?;
        m.binary_inputs = values.len();
        Ok(m)
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn values_f64(&self) -> Vec<f64> {
        self.values.iter().map(rational_to_f64).collect()
    }

    pub fn get(&self, n: usize) -> Option<&BigRational> {
        self.values.get(n)
    }

    /// Highest moment index available.
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn with_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }

    /// Same values attached to another interval, e.g. a wider interval
    /// containing the support.
    pub fn with_domain(mut self, domain: (f64, f64)) -> Result<Self> {
        AffineDomainMap::new(domain.0, domain.1)?;
        self.domain = domain;
        Ok(self)
    }

    pub fn binary_inputs(&self) -> usize {
        self.binary_inputs
    }

    pub(crate) fn with_binary_inputs(mut self, count: usize) -> Self {
        self.binary_inputs = count;
        self
    }

    pub fn standard_errors(&self) -> Option<&[f64]> {
        self.standard_errors.as_deref()
    }

    pub(crate) fn with_standard_errors(mut self, se: Vec<f64>) -> Self {
        self.standard_errors = Some(se);
        self
    }

    /// The first `order + 1` moments.
    pub fn truncated(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::InsufficientMoments {
                requested: order,
                available: self.order(),
            });
        }
        let mut out = self.clone();
        out.values.truncate(order + 1);
        if let Some(se) = out.standard_errors.as_mut() {
            se.truncate(order + 1);
        }
        Ok(out)
    }

    pub fn is_unit_interval(&self) -> bool {
        self.domain == (-1.0, 1.0)
    }

    /// Validity diagnostics: normalization and, on `[-1, 1]`, `|mu'_n| <= 1`.
    pub fn diagnostics(&self) -> Vec<Warning> {
        let mut out = Vec::new();
        let mu0 = rational_to_f64(&self.values[0]);
        if (mu0 - 1.0).abs() > 1e-12 {
            out.push(Warning::Normalization { mu0 });
        }
        if self.is_unit_interval() {
            let one = BigRational::one();
            let slack = BigRational::new(1.into(), BigInt::from(10).pow(12));
            let bound = one * &self.values[0].abs() + slack;
            for (index, v) in self.values.iter().enumerate() {
                if v.abs() > bound {
                    out.push(Warning::MomentOutOfRange {
                        index,
                        value: rational_to_f64(v),
                    });
                }
            }
        }
        if self.binary_inputs > 0 {
            out.push(Warning::BinaryFloatInput {
                count: self.binary_inputs,
            });
        }
        out
    }
}

/// `<T_0(X)>..<T_N(X)>`, the only input of the estimator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChebyshevExpectations {
    values: Vec<f64>,
    precision_used: Precision,
    amplification_log10: f64,
    warnings: Vec<Warning>,
}

impl ChebyshevExpectations {
    /// Expectations computed directly (no monomial transform involved).
    pub fn new(values: Vec<f64>) -> Self {
        assert!(!values.is_empty(), "at least <T_0> is required");
        let warnings = out_of_range(&values);
        ChebyshevExpectations {
            values,
            precision_used: Precision::Digits(15),
            amplification_log10: 0.0,
            warnings,
        }
    }

    /// Expectations of the arcsine law: `<T_0> = 1`, all others zero.
    pub fn arcsine(order: usize) -> Self {
        let mut v = vec![0.0; order + 1];
        v[0] = 1.0;
        Self::new(v)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn precision_used(&self) -> Precision {
        self.precision_used
    }

    pub fn amplification_log10(&self) -> f64 {
        self.amplification_log10
    }

    pub fn warnings(&self) -> &[Warning] {
        &self.warnings
    }

    pub fn truncated(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::InsufficientMoments {
                requested: order,
                available: self.order(),
            });
        }
        let mut out = self.clone();
        out.values.truncate(order + 1);
        out.warnings.retain(|w| match w {
            Warning::ExpectationOutOfRange { order: n, .. } => *n <= order,
            Warning::PrecisionShortfall { order: n, .. } => *n <= order,
            _ => true,
        });
        Ok(out)
    }

    /// Series coefficients `a_0 = <T_0>`, `a_n = 2 <T_n>` of the closed form.
    pub fn series_coefficients(&self) -> Vec<f64> {
        self.values
            .iter()
            .enumerate()
            .map(|(n, &v)| if n == 0 { v } else { 2.0 * v })
            .collect()
    }
}

fn out_of_range(values: &[f64]) -> Vec<Warning> {
    let bound = values[0].abs() + 1e-9;
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.abs() > bound || !v.is_finite())
        .map(|(order, &value)| Warning::ExpectationOutOfRange { order, value })
        .collect()
}

/// Chebyshev expectations from raw moments on `[-1, 1]`.
///
/// The sum is evaluated exactly; the result carries the input precision and
/// a warning whenever `log10(sum_m |c_{N,m}|)` exceeds the digits the input
/// actually has.
pub fn moments_to_chebyshev(moments: &MomentVector, order: usize) -> Result<ChebyshevExpectations> {
    if !moments.is_unit_interval() {
        let (a, b) = moments.domain();
        return Err(Error::NotNormalizedDomain { a, b });
    }
    if order > moments.order() {
        return Err(Error::InsufficientMoments {
            requested: order,
            available: moments.order(),
        });
    }
    let matrix = ChebCoeffMatrix::new(order);
    let mu = &moments.values()[..=order];

    // common denominator, then pure integer dot products
    let lcm = mu
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled: Vec<BigInt> = mu
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();

    let values: Vec<f64> = matrix
        .rows()
        .map(|row| {
            let sum: BigInt = row
                .iter()
                .zip(&scaled)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, m)| c * m)
                .sum();
            rational_to_f64(&BigRational::new(sum, lcm.clone()))
        })
        .collect();

    let amplification_log10 = matrix.amplification_log10(order);
    let mut warnings = moments.diagnostics();
    if let Precision::Digits(digits) = moments.precision() {
        if amplification_log10 > digits as f64 {
            warnings.push(Warning::PrecisionShortfall {
                order,
                amplification_log10,
                digits,
            });
        }
    }
    warnings.extend(out_of_range(&values));
    Ok(ChebyshevExpectations {
        values,
        precision_used: moments.precision(),
        amplification_log10,
        warnings,
    })
}

/// The same transform evaluated in double precision. Kept to demonstrate
/// the conditioning problem; unusable beyond order ~20.
pub fn moments_to_chebyshev_f64(moments: &[f64], order: usize) -> Result<Vec<f64>> {
    if order + 1 > moments.len() {
        return Err(Error::InsufficientMoments {
            requested: order,
            available: moments.len().saturating_sub(1),
        });
    }
    let matrix = ChebCoeffMatrix::new(order);
    Ok(matrix
        .rows()
        .map(|row| {
            row.iter()
                .zip(moments)
                .map(|(c, m)| c.to_f64().unwrap_or(f64::NAN) * m)
                .sum()
        })
        .collect())
}

/// Moments of `Y = s X + t` from those of `X`, by binomial expansion.
pub fn affine_transform_moments(
    values: &[BigRational],
    scale: &BigRational,
    shift: &BigRational,
) -> Vec<BigRational> {
    let order = values.len().saturating_sub(1);
    let scale_pow = powers(scale, order);
    let shift_pow = powers(shift, order);
    let mut binom: Vec<BigInt> = vec![BigInt::one()];
    let mut out = Vec::with_capacity(values.len());
    for n in 0..=order {
        if n > 0 {
            let mut next = vec![BigInt::one(); n + 1];
            for k in 1..n {
                next[k] = &binom[k - 1] + &binom[k];
            }
            binom = next;
        }
        let mut acc = BigRational::zero();
        for k in 0..=n {
            if values[k].is_zero() {
                continue;
            }
            acc += BigRational::from_integer(binom[k].clone())
                * &scale_pow[k]
                * &shift_pow[n - k]
                * &values[k];
        }
        out.push(acc);
    }
    out
}

fn powers(x: &BigRational, n: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigRational::one());
    for k in 1..=n {
        let next = &out[k - 1] * x;
        out.push(next);
    }
    out
}

/// Moments of `forward(X)` on `[-1, 1]` from moments of `X` on `[a, b]`.
pub fn rescale_moments(moments: &MomentVector, map: &AffineDomainMap) -> Result<MomentVector> {
    let (a, b) = moments.domain();
    if (a, b) != (map.lower(), map.upper()) {
        return Err(Error::InvalidParameter(format!(
            "moments live on [{a}, {b}] but the map expects [{}, {}]",
            map.lower(),
            map.upper()
        )));
    }
    let (s, t) = map.exact_coefficients();
    let mut out = moments.clone();
    out.values = affine_transform_moments(moments.values(), &s, &t);
    out.domain = (-1.0, 1.0);
    out.standard_errors = None;
    Ok(out)
}

/// Inverse of [`rescale_moments`]: moments on `[a, b]` from moments on `[-1, 1]`.
pub fn restore_moments(moments: &MomentVector, map: &AffineDomainMap) -> Result<MomentVector> {
    if !moments.is_unit_interval() {
        let (a, b) = moments.domain();
        return Err(Error::NotNormalizedDomain { a, b });
    }
    let (s, t) = map.exact_coefficients();
    let inv_s = s.recip();
    let inv_t = -t * &inv_s;
    let mut out = moments.clone();
    out.values = affine_transform_moments(moments.values(), &inv_s, &inv_t);
    out.domain = (map.lower(), map.upper());
    out.standard_errors = None;
    Ok(out)
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a decimal literal such as `-1.25e-3`.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = digits.parse().ok()?;
    if negative {
        numer = -numer;
    }
    let exp10 = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10);
    Some(if exp10 >= 0 {
        BigRational::from_integer(numer * ten.pow(exp10 as u32))
    } else {
        BigRational::new(numer, ten.pow((-exp10) as u32))
    })
}

/// Decimal string with `digits` significant digits, e.g. `3.3333e-1`.
pub fn format_decimal(r: &BigRational, digits: u32) -> String {
    let digits = digits.max(1);
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let abs = r.abs();
    let ten = BigInt::from(10);

    // estimate the decimal exponent, then correct
    let mut exp10 = (crate::chebyshev::log10_bigint(abs.numer())
        - crate::chebyshev::log10_bigint(abs.denom()))
    .floor() as i64;
    let scaled = |e: i64| -> BigInt {
        let shift = digits as i64 - 1 - e;
        let v = if shift >= 0 {
            &abs * BigRational::from_integer(ten.pow(shift as u32))
        } else {
            &abs / BigRational::from_integer(ten.pow((-shift) as u32))
        };
        v.round().to_integer()
    };
    let lower = ten.pow(digits - 1);
    let upper = ten.pow(digits);
    let mut q = scaled(exp10);
    loop {
        if q >= upper {
            exp10 += 1;
            q = scaled(exp10);
        } else if q < lower {
            exp10 -= 1;
            q = scaled(exp10);
        } else {
            break;
        }
    }
    let s = q.to_string();
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let sign = if negative { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{exp10}")
    } else {
        format!("{sign}{head}.{tail}e{exp10}")
    }
}

/// Moments of the arcsine law on `[-1, 1]`: `mu'_{2k} = C(2k, k) / 4^k`.
pub fn arcsine_moments(order: usize) -> MomentVector {
    let values = (0..=order)
        .map(|n| {
            if n % 2 == 1 {
                BigRational::zero()
            } else {
                let k = n / 2;
                BigRational::new(binomial(n, k), BigInt::from(4).pow(k as u32))
            }
        })
        .collect();
    MomentVector::exact(values, (-1.0, 1.0)).expect("valid domain")
}

/// Moments of the uniform law on `[-1, 1]`: `1/(n+1)` for even `n`.
pub fn uniform_moments(order: usize) -> MomentVector {
    let values = (0..=order)
        .map(|n| {
            if n % 2 == 1 {
                BigRational::zero()
            } else {
                BigRational::new(1.into(), BigInt::from(n + 1))
            }
        })
        .collect();
    MomentVector::exact(values, (-1.0, 1.0)).expect("valid domain")
}

/// Moments of a point mass at `c` (exact binary value of `c`).
pub fn point_mass_moments(c: f64, order: usize, domain: (f64, f64)) -> Result<MomentVector> {
    let c = rational_from_f64(c);
    MomentVector::exact(powers(&c, order), domain)
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
