use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::coeff::CoeffPoly;
use super::symbols::{same_table, Symbols};
use super::PolyError;

pub const VAR_NAMES: [&str; 4] = ["X11", "X12", "X21", "X22"];

/// Exponents of `X11, X12, X21, X22`. The derived ordering is lexicographic
/// with `X11 > X12 > X21 > X22`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial4(pub [u32; 4]);

impl Monomial4 {
    pub const ONE: Monomial4 = Monomial4([0, 0, 0, 0]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Monomial4(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(other.0) {
            *x += y;
        }
        Monomial4(e)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a <= b)
    }

    pub(crate) fn factors(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, &k) in self.0.iter().enumerate() {
            match k {
                0 => {}
                1 => out.push(VAR_NAMES[i].to_string()),
                _ => out.push(format!("{}^{}", VAR_NAMES[i], k)),
            }
        }
        out
    }
}

impl fmt::Display for Monomial4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fs = self.factors();
        if fs.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&fs.join("*"))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

/// Polynomial in `X11, X12, X21, X22` with [`CoeffPoly`] coefficients.
#[derive(Clone, Debug)]
pub struct RelPoly {
    table: Symbols,
    terms: BTreeMap<Monomial4, CoeffPoly>,
}

impl PartialEq for RelPoly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for RelPoly {}

impl RelPoly {
    pub fn zero(table: &Symbols) -> Self {
        Self { table: table.clone(), terms: BTreeMap::new() }
    }

    pub fn from_coeff(c: CoeffPoly) -> Self {
        Self::term(Monomial4::ONE, c)
    }

    pub fn term(m: Monomial4, c: CoeffPoly) -> Self {
        let mut p = Self::zero(c.table());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn one(table: &Symbols) -> Self {
        Self::from_coeff(CoeffPoly::one(table))
    }

    pub fn from_int(table: &Symbols, c: i64) -> Self {
        Self::from_coeff(CoeffPoly::from_int(table, c))
    }

    /// The variable `X11`, `X12`, `X21` or `X22` (index 0..4).
    pub fn var(table: &Symbols, i: usize) -> Self {
        Self::term(Monomial4::var(i), CoeffPoly::one(table))
    }

    pub fn symbol(table: &Symbols, name: &str) -> Result<Self, PolyError> {
        Ok(Self::from_coeff(CoeffPoly::named(table, name)?))
    }

    /// `X11*X22 - X12*X21 - 1`.
    pub fn sl2_generator(table: &Symbols) -> Self {
        &Self::det_x(table) - &Self::one(table)
    }

    /// `X11*X22 - X12*X21`.
    pub fn det_x(table: &Symbols) -> Self {
        let one = CoeffPoly::one(table);
        let mut p = Self::zero(table);
        p.terms.insert(Monomial4([1, 0, 0, 1]), one.clone());
        p.terms.insert(Monomial4([0, 1, 1, 0]), -&one);
        p
    }

    pub fn table(&self) -> &Symbols {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial4) -> CoeffPoly {
        self.terms.get(m).cloned().unwrap_or_else(|| CoeffPoly::zero(&self.table))
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial4, &CoeffPoly)> {
        self.terms.iter()
    }

    /// Largest term under lex order.
    pub fn leading_term(&self) -> Option<(Monomial4, CoeffPoly)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c.clone()))
    }

    /// Nonzero terms, lex-descending.
    pub fn coefficient_rules(&self) -> Vec<(Monomial4, CoeffPoly)> {
        self.terms.iter().rev().map(|(m, c)| (*m, c.clone())).collect()
    }

    pub fn degree(&self) -> Degree {
        let degs: BTreeSet<u32> = self.terms.keys().map(Monomial4::degree).collect();
        match degs.len() {
            0 => Degree::Zero,
            1 => Degree::Homogeneous(*degs.iter().next().unwrap()),
            _ => Degree::Inhomogeneous,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial4::degree).max()
    }

    /// Indices of constant symbols that actually occur.
    pub fn support(&self) -> Vec<usize> {
        let mut s: BTreeSet<usize> = BTreeSet::new();
        for c in self.terms.values() {
            s.extend(c.support());
        }
        s.into_iter().collect()
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(PolyError::TableMismatch)
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial4, c: &CoeffPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = Self::zero(&self.table);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    /// Multiply every coefficient by a constant polynomial.
    pub fn try_scale(&self, c: &CoeffPoly) -> Result<Self, PolyError> {
        if !same_table(&self.table, c.table()) {
            return Err(PolyError::TableMismatch);
        }
        let mut out = Self::zero(&self.table);
        for (m, v) in &self.terms {
            out.add_term(*m, &(v * c));
        }
        Ok(out)
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(&self.table);
        for (m, v) in &self.terms {
            out.add_term(*m, &v.scale(c));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.table);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Multiply each term of degree `k` by `(X11*X22 - X12*X21)^((D-k)/2)`,
    /// `D` the top degree. Fails when some gap `D-k` is odd.
    pub fn homogenize(&self) -> Result<Self, PolyError> {
        let Some(top) = self.total_degree() else {
            return Ok(self.clone());
        };
        let det = Self::det_x(&self.table);
        let mut out = Self::zero(&self.table);
        for (m, c) in &self.terms {
            let gap = top - m.degree();
            if gap % 2 == 1 {
                return Err(PolyError::OddDegreeGap { monomial: m.to_string(), gap });
            }
            let t = &Self::term(*m, c.clone()) * &det.pow(gap / 2);
            out = &out + &t;
        }
        Ok(out)
    }

    /// Exact value at a point `x = (X11, X12, X21, X22)` with the constants
    /// assigned by name.
    pub fn evaluate(
        &self,
        x: &[BigRational; 4],
        constants: &BTreeMap<String, BigRational>,
    ) -> Result<BigRational, PolyError> {
        let slots = constant_slots(&self.table, &self.support(), constants)?;
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.eval_slots(&slots);
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    t *= num_traits::pow(x[i].clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Replace the constants by values, keeping only the `X` variables symbolic.
    pub fn specialize(&self, constants: &BTreeMap<String, BigRational>) -> Result<Self, PolyError> {
        let slots = constant_slots(&self.table, &self.support(), constants)?;
        let mut out = Self::zero(&self.table);
        for (m, c) in &self.terms {
            out.add_term(*m, &CoeffPoly::constant(&self.table, c.eval_slots(&slots)));
        }
        Ok(out)
    }

    /// Substitute a value for a single constant symbol.
    pub fn substitute_symbol(&self, index: usize, value: &BigRational) -> Self {
        let mut out = Self::zero(&self.table);
        for (m, c) in &self.terms {
            out.add_term(*m, &c.substitute(index, value));
        }
        out
    }

    pub fn embed(&self, target: &Symbols) -> Result<Self, PolyError> {
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            out.add_term(*m, &c.embed(target)?);
        }
        Ok(out)
    }
}

/// Slot vector for coefficient evaluation; checks coverage and root
/// consistency of the symbols in `used`.
pub(crate) fn constant_slots(
    table: &Symbols,
    used: &[usize],
    constants: &BTreeMap<String, BigRational>,
) -> Result<Vec<BigRational>, PolyError> {
    let mut slots = vec![BigRational::zero(); table.len()];
    for (i, sym) in table.iter().enumerate() {
        match constants.get(&sym.name) {
            Some(v) => {
                if let Some(r) = sym.radicand() {
                    if &(v * v) != r {
                        return Err(PolyError::RootInconsistent(sym.name.clone()));
                    }
                }
                slots[i] = v.clone();
            }
            None if used.contains(&i) => return Err(PolyError::MissingAssignment(sym.name.clone())),
            None => {}
        }
    }
    Ok(slots)
}

impl fmt::Display for RelPoly {
    /// Canonical text: monomials lex-descending; inside each monomial the
    /// coefficient terms lex-descending in declaration order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let xs = m.factors();
            for (e, v) in c.terms().rev() {
                if first {
                    if v.is_negative() {
                        out.push('-');
                    }
                    first = false;
                } else {
                    out.push_str(if v.is_negative() { " - " } else { " + " });
                }
                CoeffPoly::write_unsigned_term(&mut out, &self.table, &v.abs(), e, &xs)?;
            }
        }
        f.write_str(&out)
    }
}

impl Add for &RelPoly {
    type Output = RelPoly;
    fn add(self, rhs: &RelPoly) -> RelPoly {
        self.try_add(rhs).expect("symbol tables differ")
    }
}

impl Sub for &RelPoly {
    type Output = RelPoly;
    fn sub(self, rhs: &RelPoly) -> RelPoly {
        self.try_sub(rhs).expect("symbol tables differ")
    }
}

impl Mul for &RelPoly {
    type Output = RelPoly;
    fn mul(self, rhs: &RelPoly) -> RelPoly {
        self.try_mul(rhs).expect("symbol tables differ")
    }
}

impl Neg for &RelPoly {
    type Output = RelPoly;
    fn neg(self) -> RelPoly {
        self.scale_rational(&-BigRational::one())
    }
}
