use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::relpoly::{conjugation_matrix, CoeffPoly, ConstSymbol, PolyMatrix2, RelPoly, SymbolTable, Symbols};

use super::RelationError;

/// Which place (or which branch of the ramified case analysis) a relation
/// polynomial comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RamifiedCase {
    /// Ordinary places: `X12`.
    Ord,
    /// Supersingular places unramified in the CM field of the center.
    Ssing,
    /// Archimedean places, first polynomial.
    Arch1,
    /// Archimedean places, second polynomial.
    Arch2,
    /// Ramified, `z12 = 0`: the polynomial `Z12`.
    Ram0,
    /// Ramified, `A*B' = B*A'` (as `A'*B - B'*A`).
    RamAb,
    /// Ramified, `A*C' = C*A'` (as `A'*C - C'*A`).
    RamAc,
    /// Ramified, `A' = d21 = 0`: the polynomial `Rd`.
    Ram1ia,
    /// Ramified, `A = 0`: the polynomial `Ra`.
    Ram1ib,
    /// Ramified, `pi11 = 0`: the polynomial `R5`.
    RamFinal,
}

impl RamifiedCase {
    pub const ALL: [RamifiedCase; 10] = [
        RamifiedCase::Ord,
        RamifiedCase::Ssing,
        RamifiedCase::Arch1,
        RamifiedCase::Arch2,
        RamifiedCase::Ram0,
        RamifiedCase::RamAb,
        RamifiedCase::RamAc,
        RamifiedCase::Ram1ia,
        RamifiedCase::Ram1ib,
        RamifiedCase::RamFinal,
    ];

    /// The six cases computed by the reduction pipeline for ramified places.
    pub const RAMIFIED: [RamifiedCase; 6] = [
        RamifiedCase::Ram0,
        RamifiedCase::RamAb,
        RamifiedCase::RamAc,
        RamifiedCase::Ram1ia,
        RamifiedCase::Ram1ib,
        RamifiedCase::RamFinal,
    ];

    /// Command-line / file name. Ramified cases follow the `cmpolyram*` names.
    pub fn name(&self) -> &'static str {
        match self {
            RamifiedCase::Ord => "ord",
            RamifiedCase::Ssing => "ssing",
            RamifiedCase::Arch1 => "arch1",
            RamifiedCase::Arch2 => "arch2",
            RamifiedCase::Ram0 => "ram0",
            RamifiedCase::RamAb => "ram",
            RamifiedCase::RamAc => "ram2",
            RamifiedCase::Ram1ia => "ram3",
            RamifiedCase::Ram1ib => "ram4",
            RamifiedCase::RamFinal => "ram5",
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            RamifiedCase::Ord => "ORD",
            RamifiedCase::Ssing => "SSING",
            RamifiedCase::Arch1 => "ARCH1",
            RamifiedCase::Arch2 => "ARCH2",
            RamifiedCase::Ram0 => "RAM0",
            RamifiedCase::RamAb => "RAM_AB",
            RamifiedCase::RamAc => "RAM_AC",
            RamifiedCase::Ram1ia => "RAM_1IA",
            RamifiedCase::Ram1ib => "RAM_1IB",
            RamifiedCase::RamFinal => "RAM_FINAL",
        }
    }
}

impl fmt::Display for RamifiedCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for RamifiedCase {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for RamifiedCase {
    type Err = RelationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        RamifiedCase::ALL
            .into_iter()
            .find(|c| c.name() == lower || c.tag().eq_ignore_ascii_case(&lower))
            .ok_or_else(|| RelationError::UnknownCase(s.to_string()))
    }
}

/// A constant expression required to be nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub label: String,
    pub expr: CoeffPoly,
}

impl Constraint {
    pub fn nonzero(label: impl Into<String>, expr: CoeffPoly) -> Self {
        Self { label: label.into(), expr }
    }
}

#[derive(Clone, Debug)]
pub struct RelationSpec {
    /// `None` for user-supplied polynomials.
    pub case: Option<RamifiedCase>,
    pub symbols: Symbols,
    pub polynomial: RelPoly,
    pub constraints: Vec<Constraint>,
}

impl RelationSpec {
    pub fn custom(polynomial: RelPoly, constraints: Vec<Constraint>) -> Self {
        Self { case: None, symbols: polynomial.table().clone(), polynomial, constraints }
    }

    pub fn case_name(&self) -> &str {
        self.case.map(|c| c.name()).unwrap_or("custom")
    }
}

/// Radicand used for `s = sqrt(d_s * d_0)` unless overridden; `36` is
/// `(-3) * (-12)`, chosen so that rational sampling points exist.
pub const DEFAULT_SSING_RADICAND: i64 = 36;

/// Constants of the ramified analysis in declaration order. `p` stands for
/// `pi11`; `d22 = -d11` is eliminated.
pub const RAMIFIED_SYMBOLS: [&str; 6] = ["a", "b", "d11", "d12", "d21", "p"];

pub fn ramified_table() -> Symbols {
    Arc::new(SymbolTable::free(RAMIFIED_SYMBOLS).expect("static symbol table"))
}

fn ssing_table(radicand: &BigRational) -> Result<Symbols, RelationError> {
    Ok(Arc::new(SymbolTable::new(vec![
        ConstSymbol::free("m"),
        ConstSymbol::free("a_s"),
        ConstSymbol::root("s", radicand.clone()),
    ])?))
}

fn arch_table() -> Symbols {
    Arc::new(SymbolTable::free(["a_s", "m", "n_s"]).expect("static symbol table"))
}

/// The intermediate quantities of the ramified case analysis, all built
/// from `Z = adj(Y) * [[a, 0], [b, -a]] * Y`.
pub struct RamifiedPieces {
    pub table: Symbols,
    pub z: PolyMatrix2,
    pub q12: RelPoly,
    pub w11: RelPoly,
    pub ra: RelPoly,
    pub rb: RelPoly,
    pub rc: RelPoly,
    pub rd: RelPoly,
    pub r3: RelPoly,
    pub r4: RelPoly,
    pub r5: RelPoly,
}

impl RamifiedPieces {
    pub fn build() -> Self {
        let t = ramified_table();
        let sym = |n: &str| RelPoly::symbol(&t, n).expect("declared");
        let c = |n: &str| CoeffPoly::named(&t, n).expect("declared");
        let int = |k: i64| RelPoly::from_int(&t, k);
        let (d11, d12, d21, p) = (sym("d11"), sym("d12"), sym("d21"), sym("p"));

        let hodge = PolyMatrix2::from_constants([[c("a"), CoeffPoly::zero(&t)], [c("b"), -&c("a")]]);
        let z = conjugation_matrix(&hodge).expect("constant matrix");
        let (z11, z12, z21) = (z.get(0, 0).clone(), z.get(0, 1).clone(), z.get(1, 0).clone());
        let pp = &p * &p;

        let q12 = &z12 - &(&pp * &d12);
        let w11 = &p * &(&z11 - &d11);
        let ra = &(&(&(&d12 * &d21) * &d21) * &pp) + &(&(&d12 * &pp) + &(&(&d21 * &d21) * &z12));
        let rb = &(&(&(&(&int(2) * &d11) * &d21) * &p) * &z12) - &(&(&(&(&int(2) * &d12) * &d21) * &pp) * &w11);
        let rc = &(&(&-&(&(&(&int(2) * &d11) * &p) * &w11) * &z12) + &(&(&d21 * &z12) * &z12))
            - &(&(&(&pp * &z12) * &z12) * &z21);
        let rd = &(&(&(&d12 * &q12) * &q12) + &(&(&(&(&int(4) * &d11) * &pp) * &z12) * &(&z12 * &z21)))
            - &(&(&(&(&int(2) * &d11) * &p) * &z12) * &w11);
        let r3 = &(&d21 * &rb) - &(&(&(&int(2) * &d11) * &p) * &ra);
        let r4 = &(&d21 * &rc) - &(&q12 * &ra);
        let z11pd = &z11 + &d11;
        let r5 = &(&(&(&d21 * &z12) * &z21) + &(&(&d21 * &z11pd) * &z11pd))
            - &(&(&(&d12 * &z12) * &z12) + &(&(&d11 * &d21) * &z11pd));
        Self { table: t, z, q12, w11, ra, rb, rc, rd, r3, r4, r5 }
    }
}

fn ramified_constraints(t: &Symbols, extra: &[&str]) -> Vec<Constraint> {
    let c = |n: &str| CoeffPoly::named(t, n).expect("declared");
    // det[alpha_s]_dR = -a^2, det[alpha_s]_v = -d11^2 - d12*d21
    let det_v = &-&(&c("d11") * &c("d11")) - &(&c("d12") * &c("d21"));
    let mut out = vec![Constraint::nonzero("a", c("a")), Constraint::nonzero("det_v", det_v)];
    for n in extra {
        out.push(Constraint::nonzero(*n, c(n)));
    }
    out
}

pub fn build_relation(case: RamifiedCase) -> RelationSpec {
    build_relation_with(case, &BigRational::from_integer(DEFAULT_SSING_RADICAND.into()))
        .expect("default radicand is nonzero")
}

/// As [`build_relation`], with an explicit radicand for the supersingular
/// root symbol `s^2 = d_s * d_0`.
pub fn build_relation_with(case: RamifiedCase, ssing_radicand: &BigRational) -> Result<RelationSpec, RelationError> {
    use RamifiedCase::*;
    let spec = match case {
        Ord => {
            let t = SymbolTable::empty();
            RelationSpec { case: Some(case), polynomial: RelPoly::var(&t, 1), symbols: t, constraints: vec![] }
        }
        Ssing => {
            let t = ssing_table(ssing_radicand)?;
            let sym = |n: &str| RelPoly::symbol(&t, n).expect("declared");
            let x = |i: usize| RelPoly::var(&t, i);
            let two_s = &RelPoly::from_int(&t, 2) * &sym("s");
            let plus = &sym("m") + &two_s;
            let minus = &sym("m") - &two_s;
            let left = &(&plus * &x(0)) * &(&x(3) + &(&sym("a_s") * &x(1)));
            let right = &(&minus * &x(1)) * &(&x(2) + &(&sym("a_s") * &x(0)));
            let constraints = vec![Constraint::nonzero("s", CoeffPoly::named(&t, "s").expect("declared"))];
            RelationSpec { case: Some(case), polynomial: &left - &right, symbols: t, constraints }
        }
        Arch1 | Arch2 => {
            let t = arch_table();
            let sym = |n: &str| RelPoly::symbol(&t, n).expect("declared");
            let x = |i: usize| RelPoly::var(&t, i);
            let det = RelPoly::det_x(&t);
            let poly = if case == Arch1 {
                &(&x(0) * &(&x(3) + &(&sym("a_s") * &x(1)))) - &(&sym("m") * &det)
            } else {
                &(&x(1) * &(&x(2) + &(&sym("a_s") * &x(0)))) - &(&sym("n_s") * &det)
            };
            RelationSpec { case: Some(case), polynomial: poly, symbols: t, constraints: vec![] }
        }
        _ => {
            let pieces = RamifiedPieces::build();
            let t = pieces.table.clone();
            let (poly, extra): (RelPoly, &[&str]) = match case {
                Ram0 => (pieces.z.get(0, 1).clone(), &[]),
                RamAb => (pieces.r3, &["p", "d21"]),
                RamAc => (pieces.r4, &["p", "d21"]),
                Ram1ia => (pieces.rd, &["p"]),
                Ram1ib => (pieces.ra, &["p", "d21"]),
                RamFinal => (pieces.r5, &["d21"]),
                _ => unreachable!(),
            };
            RelationSpec { case: Some(case), constraints: ramified_constraints(&t, extra), polynomial: poly, symbols: t }
        }
    };
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordinary_relation_is_x12() {
        let spec = build_relation(RamifiedCase::Ord);
        assert_eq!(spec.polynomial.to_string(), "X12");
        assert!(spec.constraints.is_empty());
    }

    #[test]
    fn ram0_is_z12() {
        let spec = build_relation(RamifiedCase::Ram0);
        assert_eq!(spec.polynomial.to_string(), "-b*X12^2 + 2*a*X12*X22");
        assert!(spec.constraints.iter().any(|c| c.label == "a"));
    }

    #[test]
    fn ram_1ib_is_a() {
        let spec = build_relation(RamifiedCase::Ram1ib);
        assert_eq!(
            spec.polynomial.to_string(),
            "-b*d21^2*X12^2 + 2*a*d21^2*X12*X22 + d12*d21^2*p^2 + d12*p^2"
        );
        let labels: Vec<&str> = spec.constraints.iter().map(|c| c.label.as_str()).collect();
        assert!(labels.contains(&"p") && labels.contains(&"d21") && labels.contains(&"a"));
    }

    #[test]
    fn case_names_round_trip() {
        for c in RamifiedCase::ALL {
            assert_eq!(c.name().parse::<RamifiedCase>().unwrap(), c);
            assert_eq!(c.tag().parse::<RamifiedCase>().unwrap(), c);
        }
        assert!("ram9".parse::<RamifiedCase>().is_err());
    }

    #[test]
    fn archimedean_and_supersingular_are_quadratic_forms() {
        use crate::relpoly::Degree;
        for c in [RamifiedCase::Ssing, RamifiedCase::Arch1, RamifiedCase::Arch2, RamifiedCase::Ram0] {
            assert_eq!(build_relation(c).polynomial.degree(), Degree::Homogeneous(2), "{c}");
        }
    }
}
