use super::coeff::CoeffPoly;
use super::poly::RelPoly;
use super::symbols::Symbols;
use super::PolyError;

/// 2x2 matrix of relation polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix2 {
    pub entries: [[RelPoly; 2]; 2],
}

impl PolyMatrix2 {
    pub fn new(m11: RelPoly, m12: RelPoly, m21: RelPoly, m22: RelPoly) -> Self {
        Self { entries: [[m11, m12], [m21, m22]] }
    }

    pub fn from_constants(c: [[CoeffPoly; 2]; 2]) -> Self {
        let [[a, b], [c, d]] = c;
        Self::new(RelPoly::from_coeff(a), RelPoly::from_coeff(b), RelPoly::from_coeff(c), RelPoly::from_coeff(d))
    }

    /// The generic matrix `Y = [[X11, X12], [X21, X22]]`.
    pub fn generic(table: &Symbols) -> Self {
        Self::new(RelPoly::var(table, 0), RelPoly::var(table, 1), RelPoly::var(table, 2), RelPoly::var(table, 3))
    }

    pub fn identity(table: &Symbols) -> Self {
        Self::new(RelPoly::one(table), RelPoly::zero(table), RelPoly::zero(table), RelPoly::one(table))
    }

    pub fn get(&self, i: usize, j: usize) -> &RelPoly {
        &self.entries[i][j]
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, PolyError> {
        let e = |i: usize, j: usize| -> Result<RelPoly, PolyError> {
            self.entries[i][0].try_mul(&rhs.entries[0][j])?.try_add(&self.entries[i][1].try_mul(&rhs.entries[1][j])?)
        };
        Ok(Self::new(e(0, 0)?, e(0, 1)?, e(1, 0)?, e(1, 1)?))
    }

    /// `[[m22, -m12], [-m21, m11]]`.
    pub fn adjugate(&self) -> Self {
        let [[a, b], [c, d]] = &self.entries;
        Self::new(d.clone(), -b, -c, a.clone())
    }

    pub fn det(&self) -> RelPoly {
        let [[a, b], [c, d]] = &self.entries;
        &(a * d) - &(b * c)
    }

    pub fn trace(&self) -> RelPoly {
        &self.entries[0][0] + &self.entries[1][1]
    }

    pub fn scale(&self, p: &RelPoly) -> Result<Self, PolyError> {
        let [[a, b], [c, d]] = &self.entries;
        Ok(Self::new(a.try_mul(p)?, b.try_mul(p)?, c.try_mul(p)?, d.try_mul(p)?))
    }
}

/// `Z = adj(Y) * M * Y` for a constant matrix `M` and generic `Y`.
pub fn conjugation_matrix(m: &PolyMatrix2) -> Result<PolyMatrix2, PolyError> {
    let table = m.get(0, 0).table().clone();
    for row in &m.entries {
        for e in row {
            if e.total_degree().unwrap_or(0) > 0 {
                return Err(PolyError::NotConstant);
            }
        }
    }
    let y = PolyMatrix2::generic(&table);
    y.adjugate().try_mul(m)?.try_mul(&y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relpoly::symbols::SymbolTable;
    use std::sync::Arc;

    fn table() -> Symbols {
        Arc::new(SymbolTable::free(["a", "b"]).unwrap())
    }

    fn hodge(t: &Symbols) -> PolyMatrix2 {
        let a = CoeffPoly::named(t, "a").unwrap();
        let b = CoeffPoly::named(t, "b").unwrap();
        PolyMatrix2::from_constants([[a.clone(), CoeffPoly::zero(t)], [b, -&a]])
    }

    #[test]
    fn adjugate_of_generic() {
        let t = table();
        let adj = PolyMatrix2::generic(&t).adjugate();
        let names: Vec<String> = adj.entries.iter().flatten().map(|p| p.to_string()).collect();
        assert_eq!(names, ["X22", "-X12", "-X21", "X11"]);
    }

    #[test]
    fn adjugate_small_cases() {
        let t = table();
        let id = PolyMatrix2::identity(&t);
        assert_eq!(id.adjugate(), id);
        let adj = hodge(&t).adjugate();
        let names: Vec<String> = adj.entries.iter().flatten().map(|p| p.to_string()).collect();
        assert_eq!(names, ["-a", "0", "-b", "a"]);
    }

    #[test]
    fn conjugation_of_hodge_matrix() {
        let t = table();
        let z = conjugation_matrix(&hodge(&t)).unwrap();
        // hand expansion of adj(Y) M Y
        assert_eq!(z.get(0, 0).to_string(), "-b*X11*X12 + a*X11*X22 + a*X12*X21");
        assert_eq!(z.get(0, 1).to_string(), "-b*X12^2 + 2*a*X12*X22");
        assert_eq!(z.get(1, 0).to_string(), "b*X11^2 - 2*a*X11*X21");
        assert_eq!(z.get(1, 1).to_string(), "b*X11*X12 - a*X11*X22 - a*X12*X21");
        assert!(z.trace().is_zero());
        for row in &z.entries {
            for e in row {
                assert_eq!(e.degree(), crate::relpoly::Degree::Homogeneous(2));
            }
        }
    }

    #[test]
    fn conjugating_identity_gives_det() {
        let t = table();
        let z = conjugation_matrix(&PolyMatrix2::identity(&t)).unwrap();
        assert!(z.get(0, 1).is_zero());
        assert_eq!(z.get(0, 0), &RelPoly::det_x(&t));
    }

    #[test]
    fn rejects_non_constant_input() {
        let t = table();
        assert_eq!(conjugation_matrix(&PolyMatrix2::generic(&t)), Err(PolyError::NotConstant));
    }
}
