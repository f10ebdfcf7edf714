use cmrel::moduli::{gz_product, gz_product_auto, round_to_bigint, singular_moduli, to_f64, weil_height};
use cmrel::quadnt::{kronecker, pset, Discriminant, LvVerdict};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

fn d(v: i64) -> Discriminant {
    Discriminant::new(v).unwrap()
}

fn fundamental_upto(n: i64) -> Vec<Discriminant> {
    (3..=n).filter_map(|x| Discriminant::new(-x).ok()).filter(|d| d.is_fundamental()).collect()
}

#[test]
fn j_at_rho_and_heegner_163() {
    let j = singular_moduli(&d(-3), 128);
    assert!(j[0].re_f64().abs() < 1e-30);
    let j = singular_moduli(&d(-163), 256);
    assert_eq!(round_to_bigint(&j[0].re), "-262537412640768000".parse::<BigInt>().unwrap());
    assert!(j[0].im_f64().abs() < 1e-30);
}

#[test]
fn moduli_of_minus_23_are_closed_under_conjugation() {
    let js = singular_moduli(&d(-23), 128);
    assert_eq!(js.len(), 3);
    let real: Vec<_> = js.iter().filter(|j| j.im_f64().abs() < 1e-20).collect();
    assert_eq!(real.len(), 1);
    let (a, b) = (&js[1], &js[2]);
    assert!((a.re_f64() - b.re_f64()).abs() < 1e-20 * a.re_f64().abs().max(1.0));
    assert!((a.im_f64() + b.im_f64()).abs() < 1e-20 * a.im_f64().abs().max(1.0));
}

#[test]
fn products_are_integers_and_obey_the_criterion() {
    let ds = fundamental_upto(40);
    for (i, a) in ds.iter().enumerate() {
        for b in &ds[i + 1..] {
            if a.value().gcd(&b.value()) != 1 {
                continue;
            }
            let r = gz_product(a, b, 192).unwrap();
            assert!(r.residual < 1e-6, "({a}, {b}) residual {}", r.residual);
            let mut check = r.cofactor.clone();
            for (p, e) in &r.factors {
                check *= BigInt::from(*p).pow(*e);
            }
            assert_eq!(check, r.rounded_integer.magnitude().clone().into(), "({a}, {b})");
            for (l, _) in &r.factors {
                let l = *l as i64;
                if l != 2 && (a.value() * b.value()) % l != 0 {
                    assert_eq!(kronecker(a.value(), l).unwrap(), -1, "({a}, {b}) l = {l}");
                    assert_eq!(kronecker(b.value(), l).unwrap(), -1, "({a}, {b}) l = {l}");
                }
            }
            assert!(r.criterion.iter().all(|c| c.verdict != LvVerdict::Fail), "({a}, {b}) {:?}", r.criterion);
        }
    }
}

#[test]
fn doubling_precision_keeps_the_integer() {
    for (a, b) in [(-3, -23), (-4, -31), (-7, -15), (-8, -20)] {
        let lo = gz_product(&d(a), &d(b), 128).unwrap();
        let hi = gz_product(&d(a), &d(b), 256).unwrap();
        assert_eq!(lo.rounded_integer, hi.rounded_integer);
    }
}

#[test]
fn low_precision_is_reported_untrusted_and_auto_recovers() {
    let r = gz_product(&d(-23), &d(-47), 0);
    if let Err(e) = &r {
        assert!(e.to_string().contains("untrusted"));
    }
    let auto = gz_product_auto(&d(-23), &d(-47), Some(4)).unwrap();
    assert!(auto.trusted());
    assert_eq!(auto.rounded_integer, gz_product(&d(-23), &d(-47), 256).unwrap().rounded_integer);
}

#[test]
fn pset_primes_divide_the_product() {
    for dj in [-7, -8, -11, -19, -28] {
        let r = gz_product(&d(-3), &d(dj), 192).unwrap();
        let n = r.rounded_integer.clone();
        assert!(!n.is_zero());
        for p in pset(&d(-3), &d(dj), false).unwrap().primes {
            assert!((&n % BigInt::from(p)).is_zero(), "{p} does not divide J(-3, {dj}) = {n}");
        }
    }
}

#[test]
fn height_of_minus_23_is_stable() {
    let a = weil_height(&d(-23), 128);
    let b = weil_height(&d(-23), 256);
    assert_eq!(a.degree, 3);
    assert!((a.height - b.height).abs() < 1e-9);
    assert!(a.conjugates.iter().all(|c| to_f64(c) > 0.0));
}

#[test]
fn product_for_minus_23_and_minus_47_matches_reference() {
    // computed independently with mpmath's kleinj at 1200 bits
    let expected: BigInt =
        "79794264506890505875677870702299809183543806102965609028387916623614728450775146484375".parse().unwrap();
    let r = gz_product_auto(&d(-23), &d(-47), None).unwrap();
    assert_eq!(r.rounded_integer, expected);
    assert!(r.cofactor.is_one());
}
