//! The height-bound inequalities as functions of user-supplied constants,
//! and scans over ranges of discriminants.
//!
//! The degree `[Q(j):Q]` of a singular modulus is taken to be the class
//! number of its discriminant, and `d(j)^eps` means `|d(j)|^eps`.

use std::fmt::Write as _;

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::moduli::weil_height;
use crate::quadnt::{class_number, pset, Discriminant};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("invalid range [{from}, {to}]: bounds must be negative")]
    Range { from: i64, to: i64 },
}

/// Constants of the bounds. The defaults are illustrative placeholders,
/// not values established for the inequalities.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundConfig {
    #[serde(serialize_with = "ser_ratio")]
    pub epsilon: Ratio<i64>,
    pub c0: f64,
    pub c1: f64,
    #[serde(rename = "C1")]
    pub big_c1: f64,
    #[serde(rename = "C2")]
    pub big_c2: f64,
    #[serde(rename = "C3")]
    pub big_c3: f64,
    pub c4: f64,
    pub c5: f64,
}

fn ser_ratio<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl Default for BoundConfig {
    fn default() -> Self {
        Self {
            epsilon: Ratio::new(1, 2),
            c0: 1.0,
            c1: 1.0,
            big_c1: 1.0,
            big_c2: 1.0,
            big_c3: 9.0,
            c4: 1.0,
            c5: 1.0,
        }
    }
}

impl BoundConfig {
    pub fn validate(&self) -> Result<(), BoundError> {
        if *self.epsilon.numer() <= 0 {
            return Err(BoundError::Config("epsilon must be positive".into()));
        }
        let positive = [("c0", self.c0), ("c1", self.c1), ("C3", self.big_c3), ("c4", self.c4), ("c5", self.c5)];
        for (name, v) in positive {
            if !v.is_finite() || v <= 0.0 {
                return Err(BoundError::Config(format!("{name} must be finite and positive, got {v}")));
            }
        }
        for (name, v) in [("C1", self.big_c1), ("C2", self.big_c2)] {
            if !v.is_finite() || v < 0.0 {
                return Err(BoundError::Config(format!("{name} must be finite and non-negative, got {v}")));
            }
        }
        Ok(())
    }

    fn eps(&self) -> f64 {
        self.epsilon.to_f64().unwrap_or(f64::NAN)
    }
}

/// `c0 * degree^c1 * (pset_size + absd^eps)^c1`.
pub fn height_bound_rhs(cfg: &BoundConfig, degree: u64, pset_size: u64, absd: u64) -> Result<f64, BoundError> {
    cfg.validate()?;
    if degree == 0 {
        return Err(BoundError::NonPositive("degree"));
    }
    if absd == 0 {
        return Err(BoundError::NonPositive("absd"));
    }
    let inner = pset_size as f64 + (absd as f64).powf(cfg.eps());
    Ok(cfg.c0 * (degree as f64).powf(cfg.c1) * inner.powf(cfg.c1))
}

/// `C1 + C2 * log(degree)`.
pub fn isogeny_bound_rhs(cfg: &BoundConfig, degree: u64) -> Result<f64, BoundError> {
    cfg.validate()?;
    if degree == 0 {
        return Err(BoundError::NonPositive("degree"));
    }
    Ok(cfg.big_c1 + cfg.big_c2 * (degree as f64).ln())
}

/// `C1 * degree^C2 * absd^(1/C3)`.
pub fn conjecture_rhs(cfg: &BoundConfig, degree: u64, absd: u64) -> Result<f64, BoundError> {
    cfg.validate()?;
    if degree == 0 {
        return Err(BoundError::NonPositive("degree"));
    }
    if absd == 0 {
        return Err(BoundError::NonPositive("absd"));
    }
    Ok(cfg.big_c1 * (degree as f64).powf(cfg.big_c2) * (absd as f64).powf(1.0 / cfg.big_c3))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BrauerSiegel {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// `absd <= c4 * max(degree, pset_size)^c5`.
pub fn brauer_siegel_check(
    cfg: &BoundConfig,
    degree: u64,
    pset_size: u64,
    absd: u64,
) -> Result<BrauerSiegel, BoundError> {
    cfg.validate()?;
    if degree == 0 {
        return Err(BoundError::NonPositive("degree"));
    }
    let lhs = absd as f64;
    let rhs = cfg.c4 * (degree.max(pset_size) as f64).powf(cfg.c5);
    Ok(BrauerSiegel { lhs, rhs, holds: lhs <= rhs })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanValues {
    pub class_number: usize,
    pub pset_size: usize,
    pub weil_height: f64,
    pub htbound_rhs: f64,
    pub isogeny_rhs: f64,
    pub conjecture_rhs: f64,
    pub ht_ok: bool,
    pub conj_ok: bool,
    /// Only meaningful when `d` and `d0` share the fundamental part.
    pub iso_ok: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRecord {
    pub d: Discriminant,
    #[serde(flatten)]
    pub values: Option<ScanValues>,
    pub error: Option<String>,
}

fn scan_row(d0: &Discriminant, d: &Discriminant, cfg: &BoundConfig, precision_bits: usize) -> Result<ScanValues, String> {
    let h = class_number(d);
    let ps = pset(d0, d, false).map_err(|e| e.to_string())?.primes.len();
    let height = weil_height(d, precision_bits).height;
    if !height.is_finite() {
        return Err("height evaluation did not converge".into());
    }
    let (deg, absd) = (h as u64, d.abs());
    let ht = height_bound_rhs(cfg, deg, ps as u64, absd).map_err(|e| e.to_string())?;
    let iso = isogeny_bound_rhs(cfg, deg).map_err(|e| e.to_string())?;
    let conj = conjecture_rhs(cfg, deg, absd).map_err(|e| e.to_string())?;
    let isogenous = d.fundamental_part() == d0.fundamental_part();
    Ok(ScanValues {
        class_number: h,
        pset_size: ps,
        weil_height: height,
        htbound_rhs: ht,
        isogeny_rhs: iso,
        conjecture_rhs: conj,
        ht_ok: height <= ht,
        conj_ok: (ps as f64) <= conj,
        iso_ok: isogenous.then_some(height <= iso),
    })
}

/// One row per valid discriminant `d != d0` in `[min(from,to), max(from,to)]`,
/// ordered by `|d|` ascending. Row failures are recorded, not raised.
pub fn scan(
    d0: &Discriminant,
    from: i64,
    to: i64,
    cfg: &BoundConfig,
    precision_bits: usize,
) -> Result<Vec<ScanRecord>, BoundError> {
    cfg.validate()?;
    if from >= 0 || to >= 0 {
        return Err(BoundError::Range { from, to });
    }
    let (lo, hi) = (from.min(to), from.max(to));
    let mut out = Vec::new();
    for v in (lo..=hi).rev() {
        let Ok(d) = Discriminant::new(v) else { continue };
        if d == *d0 {
            continue;
        }
        match scan_row(d0, &d, cfg, precision_bits) {
            Ok(values) => out.push(ScanRecord { d, values: Some(values), error: None }),
            Err(e) => out.push(ScanRecord { d, values: None, error: Some(e) }),
        }
    }
    Ok(out)
}

pub const CSV_HEADER: &str = "d,h_class,pset_size,weil_height,htbound_rhs,isogeny_rhs,conjecture_rhs,ht_ok,conj_ok";

/// `%.12g`-style formatting.
pub fn format_g12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.11e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{:.*}", decimals, x);
        trim_zeros(&s)
    } else {
        let m = trim_zeros(mant);
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

pub fn scan_csv(rows: &[ScanRecord]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        match &r.values {
            Some(v) => {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    r.d,
                    v.class_number,
                    v.pset_size,
                    format_g12(v.weil_height),
                    format_g12(v.htbound_rhs),
                    format_g12(v.isogeny_rhs),
                    format_g12(v.conjecture_rhs),
                    v.ht_ok,
                    v.conj_ok
                );
            }
            None => {
                let _ = writeln!(out, "{},,,,,,,,", r.d);
            }
        }
    }
    out
}
