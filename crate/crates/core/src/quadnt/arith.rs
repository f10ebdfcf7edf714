//! Small-integer helpers: primality, factorization, residue symbols.

use super::QuadError;

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut k = 5i64;
    while k.saturating_mul(k) <= n {
        if n % k == 0 || n % (k + 2) == 0 {
            return false;
        }
        k += 6;
    }
    true
}

/// Prime factorization of `|n|` as `(p, e)` pairs in increasing order.
pub fn factorize(n: i64) -> Vec<(i64, u32)> {
    let mut n = n.unsigned_abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p as i64, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n as i64, 1));
    }
    out
}

pub fn prime_divisors(n: i64) -> Vec<i64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// `(p^k, rest)` with `p` not dividing `rest`; `n` nonzero.
pub(crate) fn split_power(mut n: i64, p: i64) -> (u32, i64) {
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    (k, n)
}

fn jacobi(mut a: i128, mut n: i128) -> i32 {
    debug_assert!(n > 0 && n % 2 == 1);
    a = a.rem_euclid(n);
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol `(a | n)`.
pub fn kronecker(a: i64, n: i64) -> Result<i32, QuadError> {
    if a == 0 && n == 0 {
        return Err(QuadError::UndefinedSymbol);
    }
    let (a, mut n) = (a as i128, n as i128);
    if n == 0 {
        return Ok(if a == 1 || a == -1 { 1 } else { 0 });
    }
    let mut t = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            t = -1;
        }
    }
    let mut v = 0;
    while n % 2 == 0 {
        n /= 2;
        v += 1;
    }
    if v > 0 {
        if a % 2 == 0 {
            return Ok(0);
        }
        if v % 2 == 1 {
            let r = a.rem_euclid(8);
            if r == 3 || r == 5 {
                t = -t;
            }
        }
    }
    Ok(t * jacobi(a, n))
}

/// A place of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HilbertPlace {
    Prime(i64),
    Infinity,
}

impl std::fmt::Display for HilbertPlace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HilbertPlace::Prime(p) => write!(f, "{p}"),
            HilbertPlace::Infinity => f.write_str("infinity"),
        }
    }
}

/// Local Hilbert symbol `(a, b)_v`.
pub fn hilbert(a: i64, b: i64, v: HilbertPlace) -> Result<i32, QuadError> {
    if a == 0 || b == 0 {
        return Err(QuadError::ZeroArgument);
    }
    let p = match v {
        HilbertPlace::Infinity => return Ok(if a < 0 && b < 0 { -1 } else { 1 }),
        HilbertPlace::Prime(p) if !is_prime(p) => return Err(QuadError::NotPrime(p)),
        HilbertPlace::Prime(p) => p,
    };
    let (alpha, u) = split_power(a, p);
    let (beta, w) = split_power(b, p);
    if p == 2 {
        let eps = |x: i64| ((x - 1) / 2).rem_euclid(2);
        let omega = |x: i64| ((x as i128 * x as i128 - 1) / 8).rem_euclid(2) as i64;
        let e = eps(u) * eps(w) + alpha as i64 * omega(w) + beta as i64 * omega(u);
        return Ok(if e % 2 == 0 { 1 } else { -1 });
    }
    let mut s = if (alpha as i64 * beta as i64 * ((p - 1) / 2)) % 2 == 0 { 1 } else { -1 };
    if beta % 2 == 1 {
        s *= kronecker(u, p)?;
    }
    if alpha % 2 == 1 {
        s *= kronecker(w, p)?;
    }
    Ok(s)
}

/// Finite places where `(a, b)_p = -1`; all lie among the primes of `2ab`.
pub fn ramified_primes(a: i64, b: i64) -> Result<Vec<i64>, QuadError> {
    let mut primes = prime_divisors(a);
    for p in std::iter::once(2).chain(prime_divisors(b)) {
        if !primes.contains(&p) {
            primes.push(p);
        }
    }
    primes.sort_unstable();
    let mut out = Vec::new();
    for p in primes {
        if hilbert(a, b, HilbertPlace::Prime(p))? == -1 {
            out.push(p);
        }
    }
    Ok(out)
}
