//! Image sizes `|f(A_1 × ... × A_d)|` over families of finite sets, and
//! log-log growth fits across set sizes.

mod image;
mod scan;
mod sets;

use thiserror::Error;

pub use image::{image_size, image_values, Distinct};
pub use scan::{
    fit_exponent, growth_scan, ExpansionReport, ExpansionReportJson, RowJson, ScanConfig, ScanRow,
    DEFAULT_BUDGET,
};
pub use sets::{gen_set, Family, FiniteSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("expected {expected} sets or families, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("could only produce {found} distinct elements of the {requested} requested")]
    CannotSatisfyDistinctness { requested: usize, found: usize },
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("sets must be nonempty")]
    EmptySet,
    #[error("n grid must be strictly increasing, positive, with at least two entries")]
    InvalidGrid,
    #[error("trials must be positive")]
    InvalidTrials,
    #[error("largest grid needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
}
