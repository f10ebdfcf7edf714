use num_integer::Integer;
use serde::Serialize;

use super::Discriminant;

/// Reduced positive definite form `a x^2 + b xy + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ReducedForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl ReducedForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        a > 0 && b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }
}

impl std::fmt::Display for ReducedForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Primitive reduced forms of discriminant `d`, sorted by `(a, b)`.
pub fn reduced_forms(d: &Discriminant) -> Vec<ReducedForm> {
    let dv = d.value();
    let absd = d.abs() as i64;
    let mut out = Vec::new();
    let mut a = 1i64;
    // a <= sqrt(|d| / 3)
    while 3 * a * a <= absd {
        for b in -a..=a {
            let num = b * b - dv;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = ReducedForm { a, b, c: num / (4 * a) };
            if f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
        a += 1;
    }
    out
}

pub fn class_number(d: &Discriminant) -> usize {
    reduced_forms(d).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forms(v: i64) -> Vec<(i64, i64, i64)> {
        reduced_forms(&Discriminant::new(v).unwrap()).iter().map(|f| (f.a, f.b, f.c)).collect()
    }

    #[test]
    fn small_discriminants() {
        assert_eq!(forms(-3), vec![(1, 1, 1)]);
        assert_eq!(forms(-4), vec![(1, 0, 1)]);
        assert_eq!(forms(-23), vec![(1, 1, 6), (2, -1, 3), (2, 1, 3)]);
        assert_eq!(forms(-12), vec![(1, 0, 3)]);
    }

    #[test]
    fn class_numbers() {
        let h = |v| class_number(&Discriminant::new(v).unwrap());
        assert_eq!(h(-3), 1);
        assert_eq!(h(-23), 3);
        assert_eq!(h(-47), 5);
        assert_eq!(h(-163), 1);
        assert_eq!(h(-20), 2);
    }
}
