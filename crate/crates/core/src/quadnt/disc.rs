use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::arith::factorize;
use super::QuadError;

/// Negative discriminant `D = D0 * f^2` of an imaginary quadratic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Discriminant {
    value: i64,
    fundamental_part: i64,
    conductor: i64,
}

impl Discriminant {
    pub fn new(value: i64) -> Result<Self, QuadError> {
        if value >= 0 || !matches!(value.rem_euclid(4), 0 | 1) {
            return Err(QuadError::InvalidDiscriminant(value));
        }
        // squarefree core s of |D| with sign, then D0 = s or 4s
        let mut core = -1i64;
        let mut square = 1i64;
        for (p, e) in factorize(value) {
            if e % 2 == 1 {
                core *= p;
            }
            square *= p.pow(e / 2);
        }
        let (fundamental_part, conductor) = if core.rem_euclid(4) == 1 {
            (core, square)
        } else {
            // |D| / |core| = square^2 is divisible by 4 here
            (4 * core, square / 2)
        };
        debug_assert_eq!(fundamental_part * conductor * conductor, value);
        Ok(Self { value, fundamental_part, conductor })
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn fundamental_part(&self) -> i64 {
        self.fundamental_part
    }

    pub fn conductor(&self) -> i64 {
        self.conductor
    }

    pub fn abs(&self) -> u64 {
        self.value.unsigned_abs()
    }

    pub fn is_fundamental(&self) -> bool {
        self.conductor == 1
    }

    /// Number of roots of unity in the order.
    pub fn units(&self) -> u32 {
        match self.value {
            -3 => 6,
            -4 => 4,
            _ => 2,
        }
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl FromStr for Discriminant {
    type Err = QuadError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: i64 = s.trim().parse().map_err(|_| QuadError::Parse(s.to_string()))?;
        Discriminant::new(v)
    }
}

impl Serialize for Discriminant {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(self.value)
    }
}

impl TryFrom<i64> for Discriminant {
    type Error = QuadError;

    fn try_from(v: i64) -> Result<Self, Self::Error> {
        Discriminant::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_parts() {
        let d = |v| Discriminant::new(v).unwrap();
        assert_eq!((d(-3).fundamental_part(), d(-3).conductor()), (-3, 1));
        assert_eq!((d(-12).fundamental_part(), d(-12).conductor()), (-3, 2));
        assert_eq!((d(-27).fundamental_part(), d(-27).conductor()), (-3, 3));
        assert_eq!((d(-16).fundamental_part(), d(-16).conductor()), (-4, 2));
        assert_eq!((d(-8).fundamental_part(), d(-8).conductor()), (-8, 1));
        assert_eq!((d(-32).fundamental_part(), d(-32).conductor()), (-8, 2));
        assert_eq!((d(-28).fundamental_part(), d(-28).conductor()), (-7, 2));
        assert_eq!((d(-20).fundamental_part(), d(-20).conductor()), (-20, 1));
    }

    #[test]
    fn invalid_values() {
        for v in [0, 5, -1, -2, -5, -6] {
            assert!(Discriminant::new(v).is_err(), "{v}");
        }
    }
}
