//! Decision procedure for the additive/multiplicative special forms.
//!
//! [`analyze`] runs the pairwise derivative-ratio tests, separability,
//! extraction of the univariate functions `r_i` with `∂_i f / r_i(x_i)` all
//! equal, classification by poles, and constructive recovery of `h` and the
//! `p_i`. Every positive verdict is checked by exact recomposition; every
//! negative verdict carries a re-checkable certificate.

mod analyze;
mod decompose;
mod extract;
mod identity;
mod independence;
mod logderiv;
mod sampler;
mod variety;
mod witness;

use thiserror::Error;

use crate::poly::PolyError;

pub use analyze::{analyze, analyze_with, AnalysisConfig, AnalysisReport};
pub use decompose::{
    classify, decompose_additive, decompose_multiplicative, recover_h, Candidate, Inner,
};
pub use extract::{extract_r, verify_de, RSystem};
pub use identity::{Certificate, EvaluationCertificate, Evidence, IdentityOutcome, IdentityPolicy};
pub use independence::{ratio_independent_of, ratio_independent_with, separability_test};
pub use logderiv::{divisors, solve_for_degree, solve_log_derivative, LogDerivative};
pub use sampler::{GenericPoints, MAX_REDRAWS};
pub use variety::{g_coefficients, VarietyReport};
pub use witness::{Decomposition, DecompositionJson, FailureWitness, Kind, Stage, WitnessJson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("variable indices must be distinct")]
    IndicesNotDistinct,
    #[error("f does not depend on variable {0}")]
    MissingVariable(usize),
    #[error("no generic point found after {MAX_REDRAWS} draws")]
    DegeneratePoint,
    #[error("at least {needed} variables required, got {got}")]
    TooFewVariables { needed: usize, got: usize },
    #[error("degree of f in x1 is not a multiple of the inner degree")]
    DegreeMismatch,
    #[error("no polynomial solution of the logarithmic-derivative equation")]
    NoPolynomialSolution,
    #[error("scale factors of the multiplicative components disagree")]
    LambdaInconsistent,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
