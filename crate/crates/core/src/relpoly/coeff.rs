use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::symbols::{same_table, SymbolKind, SymbolTable, Symbols};
use super::PolyError;

/// Exponent vector over the declared constants, one slot per symbol.
pub type SymExps = Vec<u32>;

/// Polynomial over the rationals in the declared constant symbols.
///
/// Stored normalized: no zero coefficients, and every root symbol appears
/// with exponent 0 or 1 (`s^2` is rewritten to its radicand on the fly).
#[derive(Clone, Debug)]
pub struct CoeffPoly {
    table: Symbols,
    terms: BTreeMap<SymExps, BigRational>,
}

impl PartialEq for CoeffPoly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for CoeffPoly {}

impl CoeffPoly {
    pub fn zero(table: &Symbols) -> Self {
        Self { table: table.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(table: &Symbols, c: BigRational) -> Self {
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(vec![0; table.len()], c);
        }
        p
    }

    pub fn from_int(table: &Symbols, c: i64) -> Self {
        Self::constant(table, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn one(table: &Symbols) -> Self {
        Self::from_int(table, 1)
    }

    /// The symbol at position `index` of the table.
    pub fn symbol(table: &Symbols, index: usize) -> Self {
        assert!(index < table.len(), "symbol index out of range");
        let mut exps = vec![0; table.len()];
        exps[index] = 1;
        let mut p = Self::zero(table);
        p.terms.insert(exps, BigRational::one());
        p
    }

    pub fn named(table: &Symbols, name: &str) -> Result<Self, PolyError> {
        table
            .index_of(name)
            .map(|i| Self::symbol(table, i))
            .ok_or_else(|| PolyError::Undeclared(name.to_string()))
    }

    pub fn table(&self) -> &Symbols {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` when the polynomial is the constant `c` (zero included).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&SymExps, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Indices of symbols that occur with nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.table.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(PolyError::TableMismatch)
        }
    }

    fn insert_term(&mut self, mut exps: SymExps, mut coeff: BigRational) {
        for (i, e) in exps.iter_mut().enumerate() {
            if *e >= 2 {
                if let SymbolKind::Root { radicand } = &self.table.get(i).kind {
                    coeff *= num_traits::pow(radicand.clone(), (*e / 2) as usize);
                    *e %= 2;
                }
            }
        }
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = Self::zero(&self.table);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: SymExps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        Self {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.table);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Evaluate with one rational per declared symbol (table order).
    /// The caller is responsible for root consistency.
    pub fn eval_slots(&self, values: &[BigRational]) -> BigRational {
        debug_assert_eq!(values.len(), self.table.len());
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= num_traits::pow(values[i].clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute a rational value for one symbol, keeping the table.
    pub fn substitute(&self, index: usize, value: &BigRational) -> Self {
        let mut out = Self::zero(&self.table);
        for (e, c) in &self.terms {
            let k = e[index];
            let mut e2 = e.clone();
            e2[index] = 0;
            let factor = if k == 0 { BigRational::one() } else { num_traits::pow(value.clone(), k as usize) };
            out.insert_term(e2, c * factor);
        }
        out
    }

    /// Re-home this polynomial in a table that extends the current one.
    pub fn embed(&self, target: &Symbols) -> Result<Self, PolyError> {
        let n = self.table.len();
        if target.len() < n || (0..n).any(|i| self.table.get(i) != target.get(i)) {
            return Err(PolyError::TableMismatch);
        }
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.resize(target.len(), 0);
            out.terms.insert(e2, c.clone());
        }
        Ok(out)
    }

    /// When the polynomial is `c * prod s_i^{e_i}` return `(c, exps)`.
    pub fn as_monomial(&self) -> Option<(&BigRational, &SymExps)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c, e))
        } else {
            None
        }
    }

    /// Product `c * prod symbol^exp`, printed without a leading sign.
    pub(crate) fn write_unsigned_term(
        f: &mut impl fmt::Write,
        table: &SymbolTable,
        coeff_abs: &BigRational,
        exps: &[u32],
        trailing: &[String],
    ) -> fmt::Result {
        let mut factors: Vec<String> = Vec::new();
        for (i, &k) in exps.iter().enumerate() {
            match k {
                0 => {}
                1 => factors.push(table.get(i).name.clone()),
                _ => factors.push(format!("{}^{}", table.get(i).name, k)),
            }
        }
        factors.extend(trailing.iter().cloned());
        if !coeff_abs.is_one() || factors.is_empty() {
            factors.insert(0, format_rational(coeff_abs));
        }
        f.write_str(&factors.join("*"))
    }
}

pub(crate) fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for CoeffPoly {
    /// Lex-descending on exponent vectors in declaration order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            CoeffPoly::write_unsigned_term(&mut out, &self.table, &c.abs(), e, &[])?;
        }
        f.write_str(&out)
    }
}

impl Add for &CoeffPoly {
    type Output = CoeffPoly;
    fn add(self, rhs: &CoeffPoly) -> CoeffPoly {
        self.try_add(rhs).expect("coefficient tables differ")
    }
}

impl Sub for &CoeffPoly {
    type Output = CoeffPoly;
    fn sub(self, rhs: &CoeffPoly) -> CoeffPoly {
        self.try_add(&-rhs).expect("coefficient tables differ")
    }
}

impl Mul for &CoeffPoly {
    type Output = CoeffPoly;
    fn mul(self, rhs: &CoeffPoly) -> CoeffPoly {
        self.try_mul(rhs).expect("coefficient tables differ")
    }
}

impl Neg for &CoeffPoly {
    type Output = CoeffPoly;
    fn neg(self) -> CoeffPoly {
        self.scale(&-BigRational::one())
    }
}
