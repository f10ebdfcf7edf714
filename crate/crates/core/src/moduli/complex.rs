//! Complex numbers over `astro_float::BigFloat`, plus exact conversions of
//! binary floats to integers and `f64`.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

pub(crate) fn consts() -> Consts {
    Consts::new().expect("constant cache allocation")
}

#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: BigFloat, p: usize) -> Self {
        Self { re, im: BigFloat::from_word(0, p) }
    }

    pub fn from_i64(v: i64, p: usize) -> Self {
        Self::from_real(BigFloat::from_i64(v, p), p)
    }

    pub fn add(&self, o: &Self, p: usize) -> Self {
        Self { re: self.re.add(&o.re, p, RM), im: self.im.add(&o.im, p, RM) }
    }

    pub fn sub(&self, o: &Self, p: usize) -> Self {
        Self { re: self.re.sub(&o.re, p, RM), im: self.im.sub(&o.im, p, RM) }
    }

    pub fn mul(&self, o: &Self, p: usize) -> Self {
        let re = self.re.mul(&o.re, p, RM).sub(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.re.mul(&o.im, p, RM).add(&self.im.mul(&o.re, p, RM), p, RM);
        Self { re, im }
    }

    pub fn scale(&self, k: &BigFloat, p: usize) -> Self {
        Self { re: self.re.mul(k, p, RM), im: self.im.mul(k, p, RM) }
    }

    pub fn norm_sqr(&self, p: usize) -> BigFloat {
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self, p: usize) -> BigFloat {
        self.norm_sqr(p).sqrt(p, RM)
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn inv(&self, p: usize) -> Self {
        let n = self.norm_sqr(p);
        Self { re: self.re.div(&n, p, RM), im: self.im.neg().div(&n, p, RM) }
    }

    pub fn div(&self, o: &Self, p: usize) -> Self {
        self.mul(&o.inv(p), p)
    }

    pub fn re_f64(&self) -> f64 {
        to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        to_f64(&self.im)
    }
}

fn words_to_biguint(words: &[u64]) -> BigUint {
    let bytes: Vec<u8> = words.iter().flat_map(|w| w.to_le_bytes()).collect();
    BigUint::from_bytes_le(&bytes)
}

/// Nearest `f64`; zero and underflow give `0.0`.
pub fn to_f64(x: &BigFloat) -> f64 {
    let Some((words, _, sign, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    if x.is_zero() || words.is_empty() {
        return 0.0;
    }
    let top = *words.last().unwrap() as f64;
    let v = top * 2f64.powi(e - 64);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// Nearest integer (ties to even).
pub fn round_to_bigint(x: &BigFloat) -> BigInt {
    let r = x.round(0, RM);
    let Some((words, _, sign, e, _)) = r.as_raw_parts() else {
        return BigInt::from(0);
    };
    if r.is_zero() {
        return BigInt::from(0);
    }
    let m = words_to_biguint(words);
    let shift = e as i64 - 64 * words.len() as i64;
    let mag = if shift >= 0 { m << shift as usize } else { m >> (-shift) as usize };
    let v = BigInt::from(mag);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// Exact binary float with the value of `n`.
pub fn bigint_to_float(n: &BigInt, p: usize) -> BigFloat {
    let (sign, mag) = n.clone().into_parts();
    let bits = mag.bits() as usize;
    let p = p.max(bits + 64);
    let mut acc = BigFloat::from_word(0, p);
    let two64 = BigFloat::from_u64(1, p).mul(&BigFloat::from_u128(1u128 << 64, p), p, RM);
    for d in mag.to_u64_digits().iter().rev() {
        acc = acc.mul(&two64, p, RM).add(&BigFloat::from_u64(*d, p), p, RM);
    }
    if sign == num_bigint::Sign::Minus {
        acc.neg()
    } else {
        acc
    }
}
