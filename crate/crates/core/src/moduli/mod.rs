//! Singular moduli to high precision, the product of differences of
//! singular moduli of two discriminants, and Weil heights.

mod complex;
mod jfun;

pub use complex::{bigint_to_float, round_to_bigint, to_f64, BigComplex};
pub use jfun::j_eval;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::quadnt::{class_number, lv_prime_check, reduced_forms, Discriminant, LvVerdict, QuadError, ReducedForm};
use complex::RM;

/// Rounding is trusted only below this distance to the nearest integer.
pub const TRUST_THRESHOLD: f64 = 0.25;
/// Upper limit for the automatic precision doubling.
pub const MAX_PRECISION_BITS: usize = 4096;
/// Trial division bound for factoring rounded products.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModuliError {
    #[error("tau must have positive imaginary part")]
    NonPositiveImaginary,
    #[error("distinct discriminants required")]
    EqualDiscriminants,
    #[error("rounding untrusted at {precision_bits} bits (residual {residual:e}); retry with {suggested_bits} bits")]
    Untrusted { residual: f64, precision_bits: usize, suggested_bits: usize },
    #[error(transparent)]
    Quad(#[from] QuadError),
}

#[derive(Clone, Debug)]
pub struct HeegnerPoint {
    pub form: ReducedForm,
    /// `(-b + i sqrt|d|) / (2a)`.
    pub tau: BigComplex,
}

impl HeegnerPoint {
    pub fn new(form: ReducedForm, p: usize) -> Self {
        let d = (form.b * form.b - 4 * form.a * form.c).unsigned_abs();
        let two_a = BigFloat::from_i64(2 * form.a, p);
        let re = BigFloat::from_i64(-form.b, p).div(&two_a, p, RM);
        let im = BigFloat::from_u64(d, p).sqrt(p, RM).div(&two_a, p, RM);
        Self { form, tau: BigComplex::new(re, im) }
    }

    pub fn im_f64(&self) -> f64 {
        form_im(&self.form)
    }
}

pub fn heegner_points(d: &Discriminant, p: usize) -> Vec<HeegnerPoint> {
    reduced_forms(d).into_iter().map(|f| HeegnerPoint::new(f, p)).collect()
}

fn form_im(f: &ReducedForm) -> f64 {
    (f.discriminant().unsigned_abs() as f64).sqrt() / (2.0 * f.a as f64)
}

/// `tau` must carry the absolute target plus the size of `j'(tau)`.
fn tau_bits(f: &ReducedForm, precision_bits: usize) -> usize {
    precision_bits + jfun::magnitude_bits(form_im(f)) + 64
}

/// `j` at the Heegner points of every reduced form of discriminant `d`,
/// in the order of [`reduced_forms`].
pub fn singular_moduli(d: &Discriminant, precision_bits: usize) -> Vec<BigComplex> {
    reduced_forms(d)
        .into_iter()
        .map(|f| {
            let h = HeegnerPoint::new(f, tau_bits(&f, precision_bits));
            j_eval(&h.tau, precision_bits).expect("Heegner points lie in the upper half plane")
        })
        .collect()
}

fn ser_bigint_raw<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    let raw = serde_json::value::RawValue::from_string(n.to_string()).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

fn ser_ratio<S: Serializer>(r: &Ratio<u32>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

fn ser_factors<S: Serializer>(f: &[(u64, u32)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(f.iter().map(|(p, e)| [*p, *e as u64]))
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionEntry {
    pub l: u64,
    pub verdict: LvVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct GZReport {
    pub d1: Discriminant,
    pub d2: Discriminant,
    /// Nearest integer to the product over all class pairs of `j(t1) - j(t2)`.
    #[serde(rename = "integer", serialize_with = "ser_bigint_raw")]
    pub rounded_integer: BigInt,
    /// Distance from the computed product to `rounded_integer`.
    pub residual: f64,
    /// `8 / (w1 * w2)`; reported, not applied.
    #[serde(serialize_with = "ser_ratio")]
    pub exponent: Ratio<u32>,
    #[serde(serialize_with = "ser_factors")]
    pub factors: Vec<(u64, u32)>,
    #[serde(serialize_with = "ser_bigint_raw")]
    pub cofactor: BigInt,
    pub criterion: Vec<CriterionEntry>,
    pub precision_bits: usize,
    #[serde(skip)]
    pub product_value: BigComplex,
}

impl GZReport {
    pub fn trusted(&self) -> bool {
        self.residual < TRUST_THRESHOLD
    }
}

/// Trial division of `|n|` by primes up to `bound`.
pub fn trial_factor(n: &BigInt, bound: u64) -> (Vec<(u64, u32)>, BigInt) {
    let mut rest = n.abs();
    let mut out = Vec::new();
    if rest.is_zero() {
        return (out, rest);
    }
    let mut p = 2u64;
    while p <= bound {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // a leftover below bound^2 is prime
    if !rest.is_one() {
        if let Some(r) = rest.to_u64() {
            if r <= bound.saturating_mul(bound) {
                out.push((r, 1));
                rest = BigInt::one();
            }
        }
    }
    (out, rest)
}

/// Bits needed above an absolute target so that the product over all class
/// pairs comes out with that absolute accuracy.
fn product_magnitude_bits(f1: &[ReducedForm], f2: &[ReducedForm]) -> usize {
    let mut bits = 0;
    for a in f1 {
        for b in f2 {
            bits += jfun::magnitude_bits(form_im(a).max(form_im(b))) + 1;
        }
    }
    bits
}

/// Default precision:
/// `64 + 12 * ceil(sqrt|d1 d2|) * max(h(d1), h(d2))` bits.
pub fn default_precision(d1: &Discriminant, d2: &Discriminant) -> usize {
    let prod = (d1.abs() as f64) * (d2.abs() as f64);
    let h = class_number(d1).max(class_number(d2));
    64 + 12 * prod.sqrt().ceil() as usize * h
}

pub fn gz_product(d1: &Discriminant, d2: &Discriminant, precision_bits: usize) -> Result<GZReport, ModuliError> {
    if d1 == d2 {
        return Err(ModuliError::EqualDiscriminants);
    }
    let (f1, f2) = (reduced_forms(d1), reduced_forms(d2));
    let wp = precision_bits + product_magnitude_bits(&f1, &f2) + 64;
    let moduli = |fs: &[ReducedForm]| -> Result<Vec<BigComplex>, ModuliError> {
        fs.iter().map(|f| j_eval(&HeegnerPoint::new(*f, tau_bits(f, wp)).tau, wp - 32)).collect()
    };
    let (j1, j2) = (moduli(&f1)?, moduli(&f2)?);
    let mut prod = BigComplex::from_i64(1, wp);
    for a in &j1 {
        for b in &j2 {
            prod = prod.mul(&a.sub(b, wp), wp);
        }
    }
    let rounded = round_to_bigint(&prod.re);
    let diff = BigComplex::new(prod.re.sub(&bigint_to_float(&rounded, wp), wp, RM), prod.im.clone());
    let residual = to_f64(&diff.abs(wp));
    // a float whose precision does not reach the units digit rounds to
    // itself, so the residual alone would not notice
    if !(residual < TRUST_THRESHOLD) || rounded.bits() as usize + 32 > wp {
        return Err(ModuliError::Untrusted {
            residual,
            precision_bits,
            suggested_bits: (2 * precision_bits).min(MAX_PRECISION_BITS).max(precision_bits + 1),
        });
    }
    let (factors, cofactor) = trial_factor(&rounded, TRIAL_DIVISION_BOUND);
    let mut criterion = Vec::new();
    for (l, _) in &factors {
        let r = lv_prime_check(d1, d2, *l as i64)?;
        criterion.push(CriterionEntry { l: *l, verdict: r.verdict });
    }
    Ok(GZReport {
        d1: *d1,
        d2: *d2,
        rounded_integer: rounded,
        residual,
        exponent: Ratio::new(8, d1.units() * d2.units()),
        factors,
        cofactor,
        criterion,
        precision_bits,
        product_value: prod,
    })
}

/// [`gz_product`] starting from [`default_precision`] (or `start`) and
/// doubling on untrusted rounding up to [`MAX_PRECISION_BITS`].
pub fn gz_product_auto(d1: &Discriminant, d2: &Discriminant, start: Option<usize>) -> Result<GZReport, ModuliError> {
    let mut bits = start.unwrap_or_else(|| default_precision(d1, d2)).min(MAX_PRECISION_BITS);
    loop {
        match gz_product(d1, d2, bits) {
            Err(ModuliError::Untrusted { .. }) if bits < MAX_PRECISION_BITS => {
                bits = (2 * bits).min(MAX_PRECISION_BITS);
            }
            other => return other,
        }
    }
}

fn ser_floats<S: Serializer>(v: &[BigFloat], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

#[derive(Clone, Debug, Serialize)]
pub struct WeilHeightResult {
    pub d: Discriminant,
    pub degree: usize,
    pub height: f64,
    /// `|j|` at each Heegner point.
    #[serde(serialize_with = "ser_floats")]
    pub conjugates: Vec<BigFloat>,
}

/// `(1/h) * sum log max(1, |j_i|)` over the singular moduli of `d`.
pub fn weil_height(d: &Discriminant, precision_bits: usize) -> WeilHeightResult {
    let p = precision_bits + 64;
    let mut cc = complex::consts();
    let one = BigFloat::from_word(1, p);
    let moduli = singular_moduli(d, precision_bits);
    let conjugates: Vec<BigFloat> = moduli.iter().map(|j| j.abs(p)).collect();
    let mut sum = BigFloat::from_word(0, p);
    for a in &conjugates {
        if a.cmp(&one).map_or(false, |c| c > 0) {
            sum = sum.add(&a.ln(p, RM, &mut cc), p, RM);
        }
    }
    let degree = conjugates.len();
    let height = to_f64(&sum) / degree as f64;
    WeilHeightResult { d: *d, degree, height, conjugates }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: i64) -> Discriminant {
        Discriminant::new(v).unwrap()
    }

    #[test]
    fn class_number_one_moduli() {
        let j4 = singular_moduli(&d(-4), 128);
        assert!((j4[0].re_f64() - 1728.0).abs() < 1e-6);
        let j3 = singular_moduli(&d(-3), 128);
        assert!(j3[0].re_f64().abs() < 1e-6 && j3[0].im_f64().abs() < 1e-6);
        let j163 = singular_moduli(&d(-163), 256);
        assert_eq!(round_to_bigint(&j163[0].re), "-262537412640768000".parse::<BigInt>().unwrap());
    }

    #[test]
    fn small_products() {
        let r = gz_product(&d(-3), &d(-4), 128).unwrap();
        assert_eq!(r.rounded_integer, BigInt::from(-1728));
        assert_eq!(r.factors, vec![(2, 6), (3, 3)]);
        assert_eq!(r.exponent, Ratio::new(1, 3));
        let r = gz_product(&d(-3), &d(-7), 128).unwrap();
        assert_eq!(r.rounded_integer, BigInt::from(3375));
        assert_eq!(r.exponent, Ratio::new(2, 3));
        assert!(matches!(gz_product(&d(-3), &d(-3), 64), Err(ModuliError::EqualDiscriminants)));
    }

    #[test]
    fn trial_division() {
        let (f, c) = trial_factor(&BigInt::from(-3375), 1000);
        assert_eq!((f, c), (vec![(3, 3), (5, 3)], BigInt::one()));
        let big = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64) * 4;
        let (f, c) = trial_factor(&big, 1000);
        assert_eq!(f, vec![(2, 2)]);
        assert_eq!(c, BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64));
    }

    #[test]
    fn heights() {
        assert_eq!(weil_height(&d(-3), 128).height, 0.0);
        assert!((weil_height(&d(-4), 128).height - 1728f64.ln()).abs() < 1e-12);
    }
}
