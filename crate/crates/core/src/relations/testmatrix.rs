use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::relpoly::{CoeffPoly, ConstSymbol, Degree, Symbols};

use super::{RelationError, RelationSpec};

/// Test-matrix families, `S(n, l) = [[n, l], [0, 1/n]]` and
/// `T(n) = [[0, 1/n], [-n, 0]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TestFamily {
    S,
    T,
}

impl FromStr for TestFamily {
    type Err = RelationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "S" | "s" => Ok(TestFamily::S),
            "T" | "t" => Ok(TestFamily::T),
            _ => Err(RelationError::UnknownFamily(s.to_string())),
        }
    }
}

impl fmt::Display for TestFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TestFamily::S => "S",
            TestFamily::T => "T",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestMatrixValue {
    /// Value with the `n` denominators cleared, over the relation's table
    /// extended by `n` and `l`.
    pub value: CoeffPoly,
    /// The power `n^k` that was multiplied in.
    pub cleared_power: u32,
}

/// Substitute the family into a homogeneous relation and multiply by
/// `n^D`, `D` the degree, so that the result is polynomial in `n` and `l`.
pub fn test_matrix_eval(spec: &RelationSpec, family: TestFamily) -> Result<TestMatrixValue, RelationError> {
    let d = match spec.polynomial.degree() {
        Degree::Zero => 0,
        Degree::Homogeneous(d) => d,
        Degree::Inhomogeneous => return Err(RelationError::NotHomogeneous),
    };
    let table: Symbols = Arc::new(
        spec.symbols.extended(vec![ConstSymbol::free("n"), ConstSymbol::free("l")])?,
    );
    let n = CoeffPoly::named(&table, "n")?;
    let l = CoeffPoly::named(&table, "l")?;
    let mut value = CoeffPoly::zero(&table);
    for (m, c) in spec.polynomial.terms() {
        let [e11, e12, e21, e22] = m.0;
        let factor = match family {
            // X11 = n, X12 = l, X21 = 0, X22 = 1/n
            TestFamily::S => {
                if e21 > 0 {
                    continue;
                }
                &n.pow(e11 + d - e22) * &l.pow(e12)
            }
            // X11 = 0, X12 = 1/n, X21 = -n, X22 = 0
            TestFamily::T => {
                if e11 > 0 || e22 > 0 {
                    continue;
                }
                let sign = if e21 % 2 == 1 { -&CoeffPoly::one(&table) } else { CoeffPoly::one(&table) };
                &sign * &n.pow(d - e12 + e21)
            }
        };
        value = &value + &(&c.embed(&table)? * &factor);
    }
    Ok(TestMatrixValue { value, cleared_power: d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::{build_relation, RamifiedCase};

    #[test]
    fn ordinary_on_s_keeps_l() {
        let v = test_matrix_eval(&build_relation(RamifiedCase::Ord), TestFamily::S).unwrap();
        assert_eq!(v.value.to_string(), "n*l");
        assert_eq!(v.cleared_power, 1);
    }

    #[test]
    fn supersingular_on_t() {
        let v = test_matrix_eval(&build_relation(RamifiedCase::Ssing), TestFamily::T).unwrap();
        assert_eq!(v.value.to_string(), "m*n^2 - 2*s*n^2");
    }

    #[test]
    fn arch1_on_s() {
        let v = test_matrix_eval(&build_relation(RamifiedCase::Arch1), TestFamily::S).unwrap();
        assert_eq!(v.value.to_string(), "a_s*n^3*l - m*n^2 + n^2");
    }
}
