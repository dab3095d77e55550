//! Chebyshev polynomials of the first kind.
//!
//! Evaluation uses the three-term recurrence `T_{n+1} = 2x T_n - T_{n-1}`;
//! `cos(n acos x)` is kept as an independent cross-check. Series evaluation
//! goes through Clenshaw's backward recurrence.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `T_n(x)` for `x` in `[-1, 1]`.
pub fn eval_chebyshev(n: usize, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            value: x,
            domain: "[-1, 1]",
        });
    }
    Ok(chebyshev_unchecked(n, x))
}

/// Recurrence evaluation without the domain check; used internally where
/// the argument is known to be in range.
pub(crate) fn chebyshev_unchecked(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => x,
        _ => {
            let (mut prev, mut cur) = (1.0, x);
            for _ in 1..n {
                let next = 2.0 * x * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Trigonometric form `cos(n acos x)`.
pub fn eval_chebyshev_trig(n: usize, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            value: x,
            domain: "[-1, 1]",
        });
    }
    Ok((n as f64 * x.acos()).cos())
}

/// `T_0(x), ..., T_n(x)` in one pass.
pub fn chebyshev_values(n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n >= 1 {
        out.push(x);
    }
    for k in 2..=n {
        out.push(2.0 * x * out[k - 1] - out[k - 2]);
    }
    out
}

/// `sum_k coeffs[k] T_k(x)` by Clenshaw's recurrence.
pub fn clenshaw(coeffs: &[f64], x: f64) -> f64 {
    let Some((&first, rest)) = coeffs.split_first() else {
        return 0.0;
    };
    let (mut b1, mut b2) = (0.0, 0.0);
    for &c in rest.iter().rev() {
        let b0 = c + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    first + x * b1 - b2
}

/// `sum_k coeffs[k] T_k(x)` by summing recurrence values term by term.
pub fn naive_series(coeffs: &[f64], x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    let mut acc = 0.0;
    for (k, &c) in coeffs.iter().enumerate() {
        let t = match k {
            0 => 1.0,
            1 => x,
            _ => {
                let next = 2.0 * x * cur - prev;
                prev = cur;
                cur = next;
                cur
            }
        };
        acc += c * t;
    }
    acc
}

/// Exact integer monomial coefficients of `T_0..T_N`.
///
/// Row `n` holds `c_{n,0..=n}`, the coefficient of `x^m` in `T_n(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebCoeffMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl ChebCoeffMatrix {
    pub fn new(order: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(order + 1);
        rows.push(vec![BigInt::from(1)]);
        if order >= 1 {
            rows.push(vec![BigInt::zero(), BigInt::from(1)]);
        }
        for n in 2..=order {
            let mut row = vec![BigInt::zero(); n + 1];
            for (m, c) in rows[n - 1].iter().enumerate() {
                row[m + 1] += c * 2;
            }
            for (m, c) in rows[n - 2].iter().enumerate() {
                row[m] -= c;
            }
            rows.push(row);
        }
        ChebCoeffMatrix { rows }
    }

    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    /// `c_{n,m}`; zero above the diagonal.
    pub fn get(&self, n: usize, m: usize) -> BigInt {
        self.rows[n].get(m).cloned().unwrap_or_default()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.rows.iter().map(Vec::as_slice)
    }

    /// Evaluates row `n` as a polynomial at `x` (Horner, double precision).
    pub fn eval_row(&self, n: usize, x: f64) -> f64 {
        self.rows[n]
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// `log10(sum_m |c_{n,m}|)`, the worst-case error amplification of the
    /// monomial-to-Chebyshev transform at order `n`.
    pub fn amplification_log10(&self, n: usize) -> f64 {
        let sum: BigInt = self.rows[n].iter().map(|c| c.abs()).sum();
        log10_bigint(&sum)
    }
}

pub fn chebyshev_coefficient_matrix(order: usize) -> ChebCoeffMatrix {
    ChebCoeffMatrix::new(order)
}

pub(crate) fn log10_bigint(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.abs().to_f64().unwrap_or(f64::INFINITY).log10();
    }
    let shift = bits - 64;
    let top = (x.abs() >> shift).to_f64().unwrap_or(f64::NAN);
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}
