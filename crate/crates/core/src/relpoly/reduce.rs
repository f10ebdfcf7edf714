use std::collections::BTreeMap;

use super::poly::{Monomial4, RelPoly};
use super::symbols::Symbols;

/// Outcome of dividing by `g = X11*X22 - X12*X21 - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult {
    pub quotient: RelPoly,
    pub remainder: RelPoly,
}

/// Lead monomial of `g` under lex with `X11 > X12 > X21 > X22`.
pub const LEAD_OF_G: Monomial4 = Monomial4([1, 0, 0, 1]);

struct Powers {
    det: Vec<RelPoly>,  // (X11*X22)^i
    tail: Vec<RelPoly>, // (X12*X21 + 1)^i
}

impl Powers {
    fn new(table: &Symbols) -> Self {
        Self { det: vec![RelPoly::one(table)], tail: vec![RelPoly::one(table)] }
    }

    fn ensure(&mut self, k: usize) {
        let table = self.det[0].table().clone();
        while self.det.len() <= k {
            let p = RelPoly::var(&table, 0).try_mul(&RelPoly::var(&table, 3)).unwrap();
            let next = &self.det[self.det.len() - 1] * &p;
            self.det.push(next);
        }
        while self.tail.len() <= k {
            let w = &(&RelPoly::var(&table, 1) * &RelPoly::var(&table, 2)) + &RelPoly::one(&table);
            let next = &self.tail[self.tail.len() - 1] * &w;
            self.tail.push(next);
        }
    }
}

/// Divide `f` by `g`. The singleton `{g}` is a Groebner basis of the
/// principal ideal, so the remainder is the unique normal form: none of its
/// monomials is divisible by `X11*X22`.
///
/// Each term `c * r * (X11 X22)^k` with `k = min(e11, e22)` is rewritten as
/// `c * r * W^k` with `W = X12 X21 + 1`, plus `g` times
/// `c * r * sum_i (X11 X22)^(k-1-i) W^i`.
pub fn reduce_sl2(f: &RelPoly) -> ReductionResult {
    let table = f.table().clone();
    let mut pw = Powers::new(&table);
    let mut quotient = RelPoly::zero(&table);
    let mut remainder = RelPoly::zero(&table);
    // group terms by k to share the power tables
    let mut by_k: BTreeMap<u32, Vec<(Monomial4, &super::coeff::CoeffPoly)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let k = m.0[0].min(m.0[3]);
        let rest = Monomial4([m.0[0] - k, m.0[1], m.0[2], m.0[3] - k]);
        by_k.entry(k).or_default().push((rest, c));
    }
    for (k, items) in by_k {
        let k = k as usize;
        pw.ensure(k);
        let mut qsum = RelPoly::zero(&table);
        for i in 0..k {
            qsum = &qsum + &(&pw.det[k - 1 - i] * &pw.tail[i]);
        }
        for (rest, c) in items {
            let lead = RelPoly::term(rest, c.clone());
            remainder = &remainder + &(&lead * &pw.tail[k]);
            if k > 0 {
                quotient = &quotient + &(&lead * &qsum);
            }
        }
    }
    ReductionResult { quotient, remainder }
}

pub fn in_ideal(f: &RelPoly) -> bool {
    reduce_sl2(f).remainder.is_zero()
}
