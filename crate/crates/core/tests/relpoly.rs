use std::collections::BTreeMap;
use std::sync::Arc;

use cmrel::relpoly::{
    conjugation_matrix, in_ideal, parse_poly, reduce_sl2, CoeffPoly, ConstSymbol, Monomial4, PolyMatrix2, RelPoly,
    SymbolTable, Symbols, LEAD_OF_G,
};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn table() -> Symbols {
    Arc::new(
        SymbolTable::new(vec![
            ConstSymbol::free("a"),
            ConstSymbol::free("b"),
            ConstSymbol::root("s", BigRational::new(9.into(), 4.into())),
        ])
        .unwrap(),
    )
}

type RawTerm = ([u32; 4], [u32; 3], i64);

fn raw_terms(max_deg: u32) -> impl Strategy<Value = Vec<RawTerm>> {
    prop::collection::vec(
        (prop::array::uniform4(0..=max_deg), prop::array::uniform3(0u32..=2), -6i64..=6),
        0..8,
    )
}

fn coeff(t: &Symbols, sym: [u32; 3], c: i64) -> CoeffPoly {
    let mut out = CoeffPoly::from_int(t, c);
    for (i, &k) in sym.iter().enumerate() {
        out = &out * &CoeffPoly::symbol(t, i).pow(k);
    }
    out
}

fn build(t: &Symbols, raw: &[RawTerm]) -> RelPoly {
    raw.iter()
        .fold(RelPoly::zero(t), |acc, (x, s, c)| &acc + &RelPoly::term(Monomial4(*x), coeff(t, *s, *c)))
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn constants(a: i64, b: i64) -> BTreeMap<String, BigRational> {
    [("a", q(a)), ("b", q(b)), ("s", BigRational::new(3.into(), 2.into()))]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn division_identity(raw in raw_terms(3)) {
        let t = table();
        let f = build(&t, &raw);
        let r = reduce_sl2(&f);
        let g = RelPoly::sl2_generator(&t);
        prop_assert_eq!(&(&r.quotient * &g) + &r.remainder, f);
        prop_assert!(r.remainder.terms().all(|(m, _)| !LEAD_OF_G.divides(m)));
    }

    #[test]
    fn normal_form_is_stable_under_ideal_shifts(raw in raw_terms(3), shift in raw_terms(2)) {
        let t = table();
        let f = build(&t, &raw);
        let u = build(&t, &shift);
        let shifted = &f + &(&u * &RelPoly::sl2_generator(&t));
        prop_assert_eq!(reduce_sl2(&shifted).remainder, reduce_sl2(&f).remainder);
        prop_assert!(in_ideal(&(&u * &RelPoly::sl2_generator(&t))));
    }

    #[test]
    fn reduction_agrees_with_evaluation_on_sl2(raw in raw_terms(3), u in -9i64..=9, v in -9i64..=9, w in -9i64..=9, a in -20i64..=20, b in -20i64..=20) {
        let t = table();
        let f = build(&t, &raw);
        // E12(u) E21(v) E12(w) has determinant 1
        let x = [q(1 + u * v), q(w + u * (1 + v * w)), q(v), q(1 + v * w)];
        prop_assert_eq!(&x[0] * &x[3] - &x[1] * &x[2], q(1));
        let c = constants(a, b);
        let r = reduce_sl2(&f).remainder;
        prop_assert_eq!(f.evaluate(&x, &c).unwrap(), r.evaluate(&x, &c).unwrap());
    }

    #[test]
    fn adjugate_law(e in prop::array::uniform4(raw_terms(1))) {
        let t = table();
        let m = PolyMatrix2::new(build(&t, &e[0]), build(&t, &e[1]), build(&t, &e[2]), build(&t, &e[3]));
        let d = m.det();
        let prod = m.try_mul(&m.adjugate()).unwrap();
        prop_assert_eq!(prod, PolyMatrix2::identity(&t).scale(&d).unwrap());
    }

    #[test]
    fn traceless_conjugation_is_traceless(c in prop::array::uniform3(((prop::array::uniform3(0u32..=2)), -6i64..=6))) {
        let t = table();
        let k = |i: usize| coeff(&t, c[i].0, c[i].1);
        let m = PolyMatrix2::from_constants([[k(0), k(1)], [k(2), -&k(0)]]);
        let z = conjugation_matrix(&m).unwrap();
        prop_assert!(z.trace().is_zero());
    }

    #[test]
    fn printed_text_parses_back(raw in raw_terms(3)) {
        let t = table();
        let f = build(&t, &raw);
        let text = f.to_string();
        prop_assert_eq!(parse_poly(&text, &t).unwrap(), f);
    }
}

#[test]
fn evaluation_matches_substitution() {
    let t = table();
    let f = parse_poly("2*a*X12*X22 - b*X12^2", &t).unwrap();
    let x = [q(0), q(1), q(-1), q(0)];
    assert_eq!(f.evaluate(&x, &constants(1, 1)).unwrap(), q(-1));
    assert!(!in_ideal(&parse_poly("X11*X22 - 1", &t).unwrap()));
    assert!(BigRational::zero() == f.evaluate(&[q(5), q(0), q(7), q(9)], &constants(3, 4)).unwrap());
}
