//! Quadratic number theory for imaginary quadratic orders: residue and
//! Hilbert symbols, reduced forms, class numbers, reduction types, and the
//! prime set attached to a singular modulus.

mod arith;
mod disc;
mod forms;
mod places;

pub use arith::{factorize, hilbert, is_prime, kronecker, prime_divisors, ramified_primes, HilbertPlace};
pub use disc::Discriminant;
pub use forms::{class_number, reduced_forms, ReducedForm};
pub use places::{
    deuring_classify, lv_prime_check, pset, LvDetails, LvReport, LvVerdict, MWitness, PSetResult, ReductionType,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("{0} is not a negative discriminant (need d < 0 and d = 0 or 1 mod 4)")]
    InvalidDiscriminant(i64),
    #[error("cannot parse '{0}' as an integer")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(i64),
    #[error("Kronecker symbol (0 | 0) is undefined")]
    UndefinedSymbol,
    #[error("Hilbert symbol arguments must be nonzero")]
    ZeroArgument,
    #[error("discriminants must differ")]
    EqualDiscriminants,
}
