use std::collections::BTreeMap;

use serde::Serialize;

use super::arith::{hilbert, is_prime, kronecker, prime_divisors, ramified_primes, split_power, HilbertPlace};
use super::{Discriminant, QuadError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionType {
    Ordinary,
    Supersingular,
    /// `p` divides the conductor; not classified.
    ConductorCase,
}

impl std::fmt::Display for ReductionType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ReductionType::Ordinary => "ordinary",
            ReductionType::Supersingular => "supersingular",
            ReductionType::ConductorCase => "conductor_case",
        })
    }
}

/// Reduction type at `p` of an elliptic curve with CM by the order of
/// discriminant `d`: supersingular iff `p` does not split in the CM field.
pub fn deuring_classify(d: &Discriminant, p: i64) -> Result<ReductionType, QuadError> {
    if !is_prime(p) {
        return Err(QuadError::NotPrime(p));
    }
    if d.conductor() % p == 0 {
        return Ok(ReductionType::ConductorCase);
    }
    Ok(match kronecker(d.fundamental_part(), p)? {
        1 => ReductionType::Ordinary,
        _ => ReductionType::Supersingular,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MWitness {
    pub x: i64,
    pub m: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PSetResult {
    pub d0: Discriminant,
    pub dj: Discriminant,
    pub primes: Vec<i64>,
    pub witnesses: BTreeMap<i64, MWitness>,
}

/// `(x, m)` with `m = (d1*d2 - x^2) / 4 > 0`, `x >= 0`.
fn m_values(d1: &Discriminant, d2: &Discriminant) -> impl Iterator<Item = MWitness> {
    let n = d1.value() * d2.value();
    (0i64..).take_while(move |x| x * x < n).filter(move |x| (n - x * x) % 4 == 0).map(move |x| MWitness {
        x,
        m: (n - x * x) / 4,
    })
}

fn admissible_prime(p: i64, n: i64) -> bool {
    p != 2 && p % 3 == 2 && n % p != 0
}

/// The prime set attached to `dj` relative to the base discriminant `d0`.
///
/// A prime `p` qualifies through some `m = (dj*d0 - x^2)/4 > 0` with `p | m`
/// when `(d0, -m)_l = 1` at every prime `l != p`. With `strict` the
/// divisibility `p | m` is not imposed; by the product formula the two
/// readings select the same primes.
pub fn pset(d0: &Discriminant, dj: &Discriminant, strict: bool) -> Result<PSetResult, QuadError> {
    if d0 == dj {
        return Err(QuadError::EqualDiscriminants);
    }
    let n = d0.value() * dj.value();
    let mut witnesses = BTreeMap::new();
    for w in m_values(d0, dj) {
        if strict {
            if let [p] = ramified_primes(d0.value(), -w.m)?.as_slice() {
                if admissible_prime(*p, n) {
                    witnesses.entry(*p).or_insert(w);
                }
            }
            continue;
        }
        let checks: Vec<i64> = {
            let mut v = prime_divisors(d0.value());
            v.extend(prime_divisors(w.m));
            v.push(2);
            v.sort_unstable();
            v.dedup();
            v
        };
        for p in prime_divisors(w.m) {
            if !admissible_prime(p, n) || witnesses.contains_key(&p) {
                continue;
            }
            let mut ok = true;
            for &l in checks.iter().filter(|&&l| l != p) {
                if hilbert(d0.value(), -w.m, HilbertPlace::Prime(l))? != 1 {
                    ok = false;
                    break;
                }
            }
            if ok {
                witnesses.insert(p, w);
            }
        }
    }
    Ok(PSetResult { d0: *d0, dj: *dj, primes: witnesses.keys().copied().collect(), witnesses })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LvVerdict {
    /// `d2 = d1 * l^(2k)` (or the other way round).
    Condition1,
    /// Some `m` with `l | m` and `(d1, -m)` ramified exactly at `l`.
    Condition2,
    /// Neither condition, but the necessary Kronecker condition holds.
    NecessaryKronecker,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LvDetails {
    pub condition1_k: Option<u32>,
    pub condition2_witness: Option<MWitness>,
    /// `l` does not divide `d1*d2`.
    pub kronecker_applicable: bool,
    pub kronecker_d1: i32,
    pub kronecker_d2: i32,
    /// Both symbols are `-1`; meaningful only when applicable.
    pub necessary_kronecker: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LvReport {
    pub l: i64,
    pub verdict: LvVerdict,
    pub details: LvDetails,
}

fn power_ratio(big: i64, small: i64, l: i64) -> Option<u32> {
    if big % small != 0 {
        return None;
    }
    let (k, rest) = split_power(big / small, l);
    (rest == 1 && k > 0 && k % 2 == 0).then_some(k / 2)
}

/// Which clause of the prime criterion for `l | J(d1, d2)` the prime
/// satisfies.
pub fn lv_prime_check(d1: &Discriminant, d2: &Discriminant, l: i64) -> Result<LvReport, QuadError> {
    if d1 == d2 {
        return Err(QuadError::EqualDiscriminants);
    }
    if !is_prime(l) {
        return Err(QuadError::NotPrime(l));
    }
    let (v1, v2) = (d1.value(), d2.value());
    let condition1_k = power_ratio(v2, v1, l).or_else(|| power_ratio(v1, v2, l));
    let mut condition2_witness = None;
    for w in m_values(d1, d2) {
        if w.m % l == 0 && ramified_primes(v1, -w.m)? == [l] && ramified_primes(v2, -w.m)? == [l] {
            condition2_witness = Some(w);
            break;
        }
    }
    let (k1, k2) = (kronecker(v1, l)?, kronecker(v2, l)?);
    let kronecker_applicable = (v1 * v2) % l != 0;
    let necessary_kronecker = k1 == -1 && k2 == -1;
    let verdict = if condition1_k.is_some() {
        LvVerdict::Condition1
    } else if condition2_witness.is_some() {
        LvVerdict::Condition2
    } else if kronecker_applicable && necessary_kronecker {
        LvVerdict::NecessaryKronecker
    } else {
        LvVerdict::Fail
    };
    Ok(LvReport {
        l,
        verdict,
        details: LvDetails {
            condition1_k,
            condition2_witness,
            kronecker_applicable,
            kronecker_d1: k1,
            kronecker_d2: k2,
            necessary_kronecker,
        },
    })
}
