use astro_float::{BigFloat, Consts};

use super::complex::{to_f64, BigComplex, RM};
use super::ModuliError;

/// Bits of `|j(tau)|` for `tau` in the fundamental domain: `|j| ~ e^(2 pi y)`.
pub(crate) fn magnitude_bits(y: f64) -> usize {
    (2.0 * std::f64::consts::PI * y / std::f64::consts::LN_2).ceil() as usize + 11
}

/// Move `tau` into the standard fundamental domain.
fn reduce_tau(tau: &BigComplex, p: usize) -> BigComplex {
    let mut t = tau.clone();
    let one = BigFloat::from_word(1, p);
    for _ in 0..10_000 {
        let shift = t.re.round(0, RM);
        t.re = t.re.sub(&shift, p, RM);
        let n = t.norm_sqr(p);
        if n.cmp(&one).map_or(true, |c| c >= 0) {
            break;
        }
        // -1/tau
        t = t.inv(p);
        t.re = t.re.neg();
        t.im = t.im.neg();
    }
    t
}

fn sigma3_table(n: usize) -> Vec<u64> {
    let mut s = vec![0u64; n + 1];
    for d in 1..=n {
        let c = (d as u64).pow(3);
        for k in (d..=n).step_by(d) {
            s[k] += c;
        }
    }
    s
}

/// `j(tau) = E4(tau)^3 / Delta(tau)` from the `q`-expansions, with
/// `Delta = q * (sum_k (-1)^k q^(k(3k-1)/2))^24`.
///
/// `precision_bits` is an absolute accuracy target; the working precision
/// adds the size of `|j|` and a 64-bit guard. Inputs are first moved into
/// the fundamental domain.
pub fn j_eval(tau: &BigComplex, precision_bits: usize) -> Result<BigComplex, ModuliError> {
    if !tau.im.is_positive() || tau.im.is_zero() {
        return Err(ModuliError::NonPositiveImaginary);
    }
    let mut cc = Consts::new().expect("constant cache allocation");
    let y = to_f64(&reduce_tau(tau, precision_bits + 128).im);
    let p = precision_bits + magnitude_bits(y) + 64;
    let t = reduce_tau(tau, p + 64);
    j_reduced(&t, p, &mut cc)
}

fn j_reduced(t: &BigComplex, p: usize, cc: &mut Consts) -> Result<BigComplex, ModuliError> {
    let y = to_f64(&t.im);
    let two_pi = cc.pi(p, RM).mul(&BigFloat::from_word(2, p), p, RM);
    let r = t.im.mul(&two_pi, p, RM).neg().exp(p, RM, cc);
    let theta = t.re.mul(&two_pi, p, RM);
    let q = BigComplex::new(theta.cos(p, RM, cc).mul(&r, p, RM), theta.sin(p, RM, cc).mul(&r, p, RM));

    // |q|^N < 2^-(p+32)
    let n = (((p + 32) as f64) * std::f64::consts::LN_2 / (2.0 * std::f64::consts::PI * y)).ceil() as usize + 2;
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(BigComplex::from_i64(1, p));
    for k in 1..=n {
        let next = powers[k - 1].mul(&q, p);
        powers.push(next);
    }

    let sigma = sigma3_table(n);
    let mut e4 = BigComplex::from_i64(0, p);
    for k in 1..=n {
        e4 = e4.add(&powers[k].scale(&BigFloat::from_u64(sigma[k], p), p), p);
    }
    e4 = e4.scale(&BigFloat::from_word(240, p), p).add(&BigComplex::from_i64(1, p), p);

    let mut eta = BigComplex::from_i64(1, p);
    for k in 1i64.. {
        let mut any = false;
        for kk in [k, -k] {
            let g = (kk * (3 * kk - 1) / 2) as usize;
            if g <= n {
                any = true;
                let term = &powers[g];
                eta = if k % 2 == 1 { eta.sub(term, p) } else { eta.add(term, p) };
            }
        }
        if !any {
            break;
        }
    }
    let e2 = eta.mul(&eta, p);
    let e4p = e2.mul(&e2, p);
    let e8 = e4p.mul(&e4p, p);
    let e16 = e8.mul(&e8, p);
    let delta = q.mul(&e16.mul(&e8, p), p);
    let num = e4.mul(&e4, p).mul(&e4, p);
    Ok(num.div(&delta, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau(re: f64, im_sqrt: u64, den: f64, p: usize) -> BigComplex {
        let im = BigFloat::from_u64(im_sqrt, p).sqrt(p, RM).div(&BigFloat::from_f64(den, p), p, RM);
        BigComplex::new(BigFloat::from_f64(re, p), im)
    }

    #[test]
    fn j_at_i() {
        let j = j_eval(&tau(0.0, 1, 1.0, 192), 128).unwrap();
        assert!((j.re_f64() - 1728.0).abs() < 1e-20, "{}", j.re_f64());
        assert!(j.im_f64().abs() < 1e-20);
    }

    #[test]
    fn j_is_invariant_under_inversion() {
        // 2i and i/2 are SL2(Z)-equivalent
        let p = 192;
        let a = BigComplex::new(BigFloat::from_word(0, p), BigFloat::from_word(2, p));
        let b = BigComplex::new(BigFloat::from_word(0, p), BigFloat::from_f64(0.5, p));
        let ja = j_eval(&a, 100).unwrap();
        let jb = j_eval(&b, 100).unwrap();
        assert!((ja.re_f64() - jb.re_f64()).abs() < 1e-15 * ja.re_f64().abs());
        assert!((ja.re_f64() - 287496.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_lower_half_plane() {
        let p = 64;
        let t = BigComplex::new(BigFloat::from_word(0, p), BigFloat::from_i64(-1, p));
        assert!(matches!(j_eval(&t, 64), Err(ModuliError::NonPositiveImaginary)));
    }
}
