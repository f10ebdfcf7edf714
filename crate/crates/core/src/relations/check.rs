use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::relpoly::{reduce_sl2, CoeffPoly, RelPoly, SymbolKind};

use super::{build_relation, Constraint, RamifiedCase, RelationError, RelationSpec};

pub const DEFAULT_SAMPLE_BOX: i64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub trials: u64,
    pub seed: u64,
    /// Constants and the parameters of the `SL2` point are drawn from
    /// `[-sample_box, sample_box]`.
    pub sample_box: i64,
}

impl SampleConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        Self { trials, seed, sample_box: DEFAULT_SAMPLE_BOX }
    }
}

fn rat_str<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rat(v))
}

fn rat_map<S: Serializer>(v: &BTreeMap<String, BigRational>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(v.iter().map(|(k, r)| (k, format_rat(r))))
}

fn rat_matrix<S: Serializer>(v: &[BigRational; 4], s: S) -> Result<S::Ok, S::Error> {
    let rows = [[format_rat(&v[0]), format_rat(&v[1])], [format_rat(&v[2]), format_rat(&v[3])]];
    rows.serialize(s)
}

fn format_rat(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientEntry {
    pub monomial: String,
    pub coefficient: String,
}

/// A point of `SL2(Q)` and constants satisfying the constraints at which
/// the remainder is nonzero.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    #[serde(serialize_with = "rat_map")]
    pub constants: BTreeMap<String, BigRational>,
    /// `(X11, X12, X21, X22)`, serialized as a 2x2 matrix.
    #[serde(serialize_with = "rat_matrix")]
    pub point: [BigRational; 4],
    #[serde(serialize_with = "rat_str")]
    pub value: BigRational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplingOutcome {
    /// A nonzero value was found.
    Witness,
    /// The remainder is nonzero but no sample hit a nonzero value.
    Inconclusive,
    /// Every accepted sample gave zero, as it must for a zero remainder.
    AllZero,
}

#[derive(Clone, Debug, Serialize)]
pub struct SamplingSummary {
    pub trials_run: u64,
    pub sample_box: i64,
    pub accepted: u64,
    pub rejected_by_constraints: u64,
    pub rejected_by_roots: u64,
    pub outcome: SamplingOutcome,
}

/// Consequences of the remainder vanishing identically: each coefficient
/// of the normal form must vanish. Coefficients that are monomials in the
/// constants force one symbol to zero when all other symbols in them are
/// known to be nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VanishingAnalysis {
    pub assumed_nonzero: Vec<String>,
    pub forced_zero: Vec<String>,
    /// Set when the forced values contradict a constraint.
    pub contradiction: Option<String>,
    /// Coefficients left undecided.
    pub residual: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NontrivialityReport {
    pub case: String,
    pub polynomial: String,
    pub remainder: String,
    pub symbolically_nonzero: bool,
    pub coefficients: Vec<CoefficientEntry>,
    pub witness: Option<Witness>,
    pub trials: u64,
    pub seed: u64,
    pub constraints: Vec<String>,
    pub sampling: SamplingSummary,
    pub vanishing: VanishingAnalysis,
    #[serde(skip)]
    pub remainder_poly: RelPoly,
}

impl NontrivialityReport {
    /// Nonzero remainder and a witness found.
    pub fn certified(&self) -> bool {
        self.symbolically_nonzero && self.witness.is_some()
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

fn sample_int(rng: &mut ChaCha8Rng, bound: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(rng.gen_range(-bound..=bound)))
}

/// `[[1 + uv, (1 + uv)w + u], [v, vw + 1]]`, the product of elementary
/// matrices `E12(u) * E21(v) * E12(w)`.
fn sl2_point(rng: &mut ChaCha8Rng, bound: i64) -> [BigRational; 4] {
    let one = BigRational::from_integer(1.into());
    let (u, v, w) = (sample_int(rng, bound), sample_int(rng, bound), sample_int(rng, bound));
    let x11 = &one + &u * &v;
    let x12 = &x11 * &w + &u;
    let x22 = &v * &w + &one;
    [x11, x12, v, x22]
}

pub fn nontrivial_check(spec: &RelationSpec, trials: u64, seed: u64) -> Result<NontrivialityReport, RelationError> {
    nontrivial_check_with(spec, SampleConfig::new(trials, seed))
}

pub fn nontrivial_check_with(spec: &RelationSpec, cfg: SampleConfig) -> Result<NontrivialityReport, RelationError> {
    let remainder = reduce_sl2(&spec.polynomial).remainder;
    let symbolically_nonzero = !remainder.is_zero();
    let coefficients = remainder
        .coefficient_rules()
        .into_iter()
        .map(|(m, c)| CoefficientEntry { monomial: m.to_string(), coefficient: c.to_string() })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let bound = cfg.sample_box.max(1);
    let (mut accepted, mut rej_c, mut rej_r, mut run) = (0u64, 0u64, 0u64, 0u64);
    let mut witness = None;
    for _ in 0..cfg.trials {
        run += 1;
        let mut constants = BTreeMap::new();
        let mut slots = Vec::with_capacity(spec.symbols.len());
        let mut root_ok = true;
        for sym in spec.symbols.iter() {
            let v = match &sym.kind {
                SymbolKind::Free => sample_int(&mut rng, bound),
                SymbolKind::Root { radicand } => match rational_sqrt(radicand) {
                    Some(r) if rng.gen_bool(0.5) => -r,
                    Some(r) => r,
                    None => {
                        root_ok = false;
                        break;
                    }
                },
            };
            slots.push(v.clone());
            constants.insert(sym.name.clone(), v);
        }
        if !root_ok {
            rej_r += 1;
            continue;
        }
        if spec.constraints.iter().any(|c| c.expr.eval_slots(&slots).is_zero()) {
            rej_c += 1;
            continue;
        }
        accepted += 1;
        let point = sl2_point(&mut rng, bound);
        let value = remainder.evaluate(&point, &constants)?;
        if !value.is_zero() {
            witness = Some(Witness { constants, point, value });
            break;
        }
    }
    if accepted == 0 {
        return Err(RelationError::Unsatisfiable { trials: cfg.trials });
    }
    let outcome = match (&witness, symbolically_nonzero) {
        (Some(_), _) => SamplingOutcome::Witness,
        (None, true) => SamplingOutcome::Inconclusive,
        (None, false) => SamplingOutcome::AllZero,
    };

    Ok(NontrivialityReport {
        case: spec.case_name().to_string(),
        polynomial: spec.polynomial.to_string(),
        remainder: remainder.to_string(),
        symbolically_nonzero,
        coefficients,
        witness,
        trials: cfg.trials,
        seed: cfg.seed,
        constraints: spec.constraints.iter().map(|c| format!("{} = {} != 0", c.label, c.expr)).collect(),
        sampling: SamplingSummary {
            trials_run: run,
            sample_box: bound,
            accepted,
            rejected_by_constraints: rej_c,
            rejected_by_roots: rej_r,
            outcome,
        },
        vanishing: vanishing_analysis(&[&remainder], &spec.constraints),
        remainder_poly: remainder,
    })
}

/// Propagate the vanishing of every coefficient of `remainders` under the
/// nonzero `constraints`.
pub fn vanishing_analysis(remainders: &[&RelPoly], constraints: &[Constraint]) -> VanishingAnalysis {
    let Some(first) = remainders.first() else {
        return VanishingAnalysis::default();
    };
    let table = first.table().clone();
    let mut nonzero = BTreeSet::new();
    let mut composite: Vec<Constraint> = Vec::new();
    for c in constraints {
        match c.expr.as_monomial() {
            Some((_, exps)) => nonzero.extend(exps.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, _)| i)),
            None => composite.push(c.clone()),
        }
    }
    let mut coeffs: Vec<(String, CoeffPoly)> = remainders
        .iter()
        .flat_map(|r| r.coefficient_rules())
        .map(|(m, c)| (m.to_string(), c))
        .collect();
    let zero = BigRational::zero();
    let mut forced = Vec::new();
    let mut contradiction = None;

    'outer: loop {
        for (m, c) in &coeffs {
            if c.is_zero() {
                continue;
            }
            let Some((_, exps)) = c.as_monomial() else { continue };
            let free: Vec<usize> =
                exps.iter().enumerate().filter(|(i, &k)| k > 0 && !nonzero.contains(i)).map(|(i, _)| i).collect();
            match free.as_slice() {
                [] => {
                    contradiction = Some(format!("coefficient {c} of {m} is nonzero under the constraints"));
                    break 'outer;
                }
                [i] => {
                    let i = *i;
                    forced.push(table.get(i).name.clone());
                    for (_, c) in coeffs.iter_mut() {
                        *c = c.substitute(i, &zero);
                    }
                    for k in composite.iter_mut() {
                        k.expr = k.expr.substitute(i, &zero);
                    }
                    continue 'outer;
                }
                _ => {}
            }
        }
        break;
    }
    if contradiction.is_none() {
        if let Some(k) = composite.iter().find(|k| k.expr.is_zero()) {
            contradiction = Some(format!("constraint {} != 0 is violated", k.label));
        }
    }
    VanishingAnalysis {
        assumed_nonzero: nonzero.iter().map(|&i| table.get(i).name.clone()).collect(),
        forced_zero: forced,
        contradiction,
        residual: coeffs.iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| format!("{m}: {c}")).collect(),
    }
}

/// Vanishing analysis of several ramified cases at once, under the union of
/// their constraints.
pub fn joint_vanishing(cases: &[RamifiedCase]) -> VanishingAnalysis {
    let specs: Vec<RelationSpec> = cases.iter().map(|&c| build_relation(c)).collect();
    let remainders: Vec<RelPoly> = specs.iter().map(|s| reduce_sl2(&s.polynomial).remainder).collect();
    let mut constraints: Vec<Constraint> = Vec::new();
    for s in &specs {
        for c in &s.constraints {
            if !constraints.iter().any(|k| k.label == c.label) {
                constraints.push(c.clone());
            }
        }
    }
    let refs: Vec<&RelPoly> = remainders.iter().collect();
    vanishing_analysis(&refs, &constraints)
}
