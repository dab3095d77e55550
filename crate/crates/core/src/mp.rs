//! Thin wrapper over `astro-float` fixing precision and rounding once.

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

pub struct MpContext {
    bits: usize,
    consts: Consts,
}

impl MpContext {
    /// Context carrying at least `digits` decimal digits plus guard bits.
    pub fn with_digits(digits: u32) -> Result<Self> {
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64;
        Self::with_bits(bits)
    }

    pub fn with_bits(bits: usize) -> Result<Self> {
        let consts = Consts::new().map_err(|e| Error::Multiprecision(format!("{e:?}")))?;
        Ok(MpContext { bits, consts })
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn f(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.bits)
    }

    pub fn int(&self, x: i64) -> BigFloat {
        BigFloat::from_i64(x, self.bits)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.bits, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.bits, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.bits, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.bits, RM)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.bits, RM, &mut self.consts)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.bits, RM)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.consts.pi(self.bits, RM)
    }

    /// Error function, from `erf z = 2/sqrt(pi) e^{-z^2} sum_k 2^k z^{2k+1} / (2k+1)!!`,
    /// whose terms are all of one sign.
    pub fn erf(&mut self, z: &BigFloat) -> BigFloat {
        if z.is_zero() {
            return self.int(0);
        }
        if z.is_negative() {
            return self.erf(&z.neg()).neg();
        }
        let two_z2 = self.mul(&self.int(2), &self.mul(z, z));
        let mut term = z.clone();
        let mut sum = z.clone();
        let mut k = 0i64;
        loop {
            k += 1;
            term = self.div(&self.mul(&term, &two_z2), &self.int(2 * k + 1));
            sum = self.add(&sum, &term);
            let negligible = match (term.exponent(), sum.exponent()) {
                (Some(t), Some(s)) => (t as i64) < s as i64 - self.bits as i64,
                _ => true,
            };
            if negligible && self.f(k as f64).cmp(&self.mul(z, z)).is_some_and(|c| c > 0) {
                break;
            }
        }
        let e = self.exp(&self.mul(z, z).neg());
        let pi = self.pi();
        let coeff = self.div(&self.int(2), &self.sqrt(&pi));
        self.mul(&self.mul(&coeff, &e), &sum)
    }

    /// Same operations at a reduced working precision (Newton warm-up).
    pub(crate) fn mul_p(&self, a: &BigFloat, b: &BigFloat, p: usize) -> BigFloat {
        a.mul(b, p, RM)
    }

    pub(crate) fn sub_p(&self, a: &BigFloat, b: &BigFloat, p: usize) -> BigFloat {
        a.sub(b, p, RM)
    }

    pub(crate) fn div_p(&self, a: &BigFloat, b: &BigFloat, p: usize) -> BigFloat {
        a.div(b, p, RM)
    }
}

/// Exact rational value of a finite multiprecision float.
pub fn to_rational(x: &BigFloat) -> Result<BigRational> {
    if x.is_zero() {
        return Ok(BigRational::zero());
    }
    let (words, _bits, sign, exponent, _) = x
        .as_raw_parts()
        .ok_or_else(|| Error::Multiprecision("non-finite value".into()))?;
    // value = 0.mantissa * 2^exponent, mantissa spanning all words
    let mut mantissa = BigUint::zero();
    for &w in words.iter().rev() {
        mantissa = (mantissa << Word::BITS) + BigUint::from(w);
    }
    let total_bits = (words.len() as i64) * Word::BITS as i64;
    let shift = exponent as i64 - total_bits;
    let mut value = BigInt::from(mantissa);
    if sign == Sign::Neg {
        value = -value;
    }
    Ok(if shift >= 0 {
        BigRational::from_integer(value << shift as usize)
    } else {
        BigRational::new(value, BigInt::from(1) << (-shift) as usize)
    })
}

pub fn to_f64(x: &BigFloat) -> f64 {
    to_rational(x)
        .ok()
        .and_then(|r| r.to_f64())
        .unwrap_or(f64::NAN)
}

/// `|x| <= bound`
pub(crate) fn abs_le(x: &BigFloat, bound: &BigFloat) -> bool {
    x.abs().cmp(bound).is_some_and(|c| c <= 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_conversion_is_exact() {
        let ctx = MpContext::with_bits(256).unwrap();
        for v in [0.75, -3.5, 1e-30, 12345.678, -2f64.powi(70)] {
            let r = to_rational(&ctx.f(v)).unwrap();
            assert_eq!(r, BigRational::from_float(v).unwrap(), "{v}");
        }
        let third = ctx.div(&ctx.int(1), &ctx.int(3));
        let r = to_rational(&third).unwrap();
        let err = (r - BigRational::new(1.into(), 3.into())).to_f64().unwrap().abs();
        assert!(err < 1e-70);
    }

    #[test]
    fn erf_matches_libm() {
        let mut ctx = MpContext::with_digits(50).unwrap();
        for z in [-3.0, -0.4, 0.0, 1e-3, 0.7, 2.5, 6.0] {
            let v = to_f64(&ctx.erf(&ctx.f(z)));
            assert!((v - libm::erf(z)).abs() < 2e-16, "z={z}: {v}");
        }
        let big = to_f64(&ctx.erf(&ctx.f(20.0)));
        assert_eq!(big, 1.0);
    }

    #[test]
    fn exp_is_accurate() {
        let mut ctx = MpContext::with_digits(60).unwrap();
        let e = ctx.exp(&ctx.int(1));
        assert!((to_f64(&e) - std::f64::consts::E).abs() < 1e-15);
    }
}
