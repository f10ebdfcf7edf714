//! Exact polynomials in the entries `X11, X12, X21, X22` of a 2x2 matrix,
//! with coefficients in a ring of symbolic constants, and their normal form
//! modulo the determinant ideal `<X11*X22 - X12*X21 - 1>`.

mod coeff;
mod matrix;
mod parse;
mod poly;
mod reduce;
mod symbols;

pub use coeff::{CoeffPoly, SymExps};
pub use matrix::{conjugation_matrix, PolyMatrix2};
pub use parse::parse_poly;
pub use poly::{Degree, Monomial4, RelPoly, VAR_NAMES};
pub use reduce::{in_ideal, reduce_sl2, ReductionResult, LEAD_OF_G};
pub use symbols::{ConstSymbol, SymbolKind, SymbolTable, Symbols};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("undeclared identifier '{name}' at offset {offset}")]
    UndeclaredAt { name: String, offset: usize },
    #[error("undeclared symbol '{0}'")]
    Undeclared(String),
    #[error("invalid symbol declaration '{0}'")]
    BadSymbol(String),
    #[error("symbol '{0}' declared twice")]
    DuplicateSymbol(String),
    #[error("operands use different symbol tables")]
    TableMismatch,
    #[error("no value assigned to '{0}'")]
    MissingAssignment(String),
    #[error("value for root symbol '{0}' does not square to its radicand")]
    RootInconsistent(String),
    #[error("matrix entries must be constants")]
    NotConstant,
    #[error("cannot homogenize: monomial {monomial} sits an odd degree gap ({gap}) below the top")]
    OddDegreeGap { monomial: String, gap: u32 },
}
