//! Rank of the algebra spanned by `I, A0, As, A0*As`, with
//! `As = [[d11, d12], [d21, -d11]]` traceless, over the fraction field of
//! the symbol ring.

use std::sync::Arc;

use crate::relpoly::{CoeffPoly, SymbolTable, Symbols};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alpha0Shape {
    /// `[[e11, 0], [e21, e22]]`.
    LowerTriangular,
    /// `[[e11, 0], [0, e22]]`.
    Diagonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClaimSetup {
    pub alpha0: Alpha0Shape,
    pub d12_zero: bool,
    pub d21_zero: bool,
}

type M2 = [[CoeffPoly; 2]; 2];

fn mat_mul(a: &M2, b: &M2) -> M2 {
    let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn flatten(m: &M2) -> Vec<CoeffPoly> {
    vec![m[0][0].clone(), m[0][1].clone(), m[1][0].clone(), m[1][1].clone()]
}

/// Leibniz expansion; only used up to size 4.
fn det(rows: &[Vec<CoeffPoly>], table: &Symbols) -> CoeffPoly {
    let n = rows.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc = CoeffPoly::zero(table);
    permute(&mut perm, 0, &mut |p| {
        let mut t = CoeffPoly::one(table);
        for (i, &j) in p.iter().enumerate() {
            t = &t * &rows[i][j];
        }
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        acc = if inversions % 2 == 0 { &acc + &t } else { &acc - &t };
    });
    acc
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

/// Rank of a matrix over the fraction field: the largest size of a
/// nonzero minor.
fn rank(rows: &[Vec<CoeffPoly>], table: &Symbols) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    for k in (1..=rows.len().min(cols)).rev() {
        for rs in subsets(rows.len(), k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<CoeffPoly>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect()).collect();
                if !det(&minor, table).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

pub fn algebra_span_rank(setup: ClaimSetup) -> usize {
    let t: Symbols = Arc::new(SymbolTable::free(["d11", "d12", "d21", "e11", "e21", "e22"]).expect("static table"));
    let c = |n: &str| CoeffPoly::named(&t, n).expect("declared");
    let zero = CoeffPoly::zero(&t);
    let pick = |flag: bool, n: &str| if flag { zero.clone() } else { c(n) };

    let id = [[CoeffPoly::one(&t), zero.clone()], [zero.clone(), CoeffPoly::one(&t)]];
    let e21 = pick(setup.alpha0 == Alpha0Shape::Diagonal, "e21");
    let a0 = [[c("e11"), zero.clone()], [e21, c("e22")]];
    let a_s = [[c("d11"), pick(setup.d12_zero, "d12")], [pick(setup.d21_zero, "d21"), -&c("d11")]];
    let prod = mat_mul(&a0, &a_s);
    let rows = vec![flatten(&id), flatten(&a0), flatten(&a_s), flatten(&prod)];
    rank(&rows, &t)
}

/// With `d12 = d21 = 0` and `A0` lower triangular, the four matrices are
/// dependent, so they cannot span a 4-dimensional algebra.
pub fn claim_check() -> bool {
    algebra_span_rank(ClaimSetup { alpha0: Alpha0Shape::LowerTriangular, d12_zero: true, d21_zero: true }) <= 3
}
