//! Relation polynomials attached to the places of a CM point, and
//! certificates that they are not identically zero on `SL2`.

mod cases;
mod check;
mod claim;
mod testmatrix;

pub use cases::{
    build_relation, build_relation_with, ramified_table, Constraint, RamifiedCase, RamifiedPieces, RelationSpec,
    DEFAULT_SSING_RADICAND, RAMIFIED_SYMBOLS,
};
pub use check::{
    joint_vanishing, nontrivial_check, nontrivial_check_with, vanishing_analysis, CoefficientEntry,
    NontrivialityReport, SampleConfig, SamplingOutcome, SamplingSummary, VanishingAnalysis, Witness,
    DEFAULT_SAMPLE_BOX,
};
pub use claim::{algebra_span_rank, claim_check, Alpha0Shape, ClaimSetup};
pub use testmatrix::{test_matrix_eval, TestFamily, TestMatrixValue};

use thiserror::Error;

use crate::relpoly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("unknown case '{0}'")]
    UnknownCase(String),
    #[error("unknown test family '{0}' (expected S or T)")]
    UnknownFamily(String),
    #[error("polynomial is not homogeneous; test-matrix evaluation needs a homogeneous input")]
    NotHomogeneous,
    #[error("no sampled constants satisfied the constraints in {trials} trials")]
    Unsatisfiable { trials: u64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}
