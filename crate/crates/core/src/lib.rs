//! Exact-arithmetic toolkit for relations among period values at CM points.
//!
//! * [`relpoly`]: polynomials in the entries of a 2x2 matrix over symbolic
//!   constants, reduced modulo the `SL2` determinant ideal.
//! * [`relations`]: the relation polynomials attached to ordinary,
//!   supersingular, archimedean and ramified places, with non-triviality
//!   certificates.
//! * [`quadnt`]: Kronecker and Hilbert symbols, reduced forms, class numbers,
//!   reduction types and the prime set attached to a singular modulus.
//! * [`moduli`]: singular moduli to high precision, products of their
//!   differences, and Weil heights.
//! * [`bounds`]: the height-bound formulas and discriminant scans.
//! * [`cli`]: the `cmrel` command line.

pub mod bounds;
pub mod cli;
pub mod moduli;
pub mod quadnt;
pub mod relations;
pub mod relpoly;
