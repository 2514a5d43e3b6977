//! Closed-form upper bounds on Betti numbers of class pre-images, in exact integers.
//!
//! Layer indexing: an architecture has widths `n_0..=n_l`, where `n_0` is the input
//! dimension and `n_l` the class count. The polynomial-activation bound is reported
//! for layers `0..l`, the ReLU bound for hidden layers `1..l`.

mod arch;
mod count;
mod cover;
mod formulas;
mod report;
mod width;

pub use arch::{Activation, ArchitectureSpec};
pub use count::BigCount;
pub use cover::{mv_union_bound, CoverBettiTable};
pub use formulas::{
    basu_bound, binomial, milnor_bound, theorem1_poly_bound, theorem2_relu_bound, Bound,
};
pub use report::{layer_bound_profile, BoundEntry, BoundReport, Monotonicity};
pub use width::{min_width_for, FreeWidth};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("architecture needs at least an input width and a class count")]
    TooFewLayers,
    #[error("width {index} is zero; all widths must be at least 1")]
    ZeroWidth { index: usize },
    #[error("class count must be at least 2, got {0}")]
    TooFewClasses(usize),
    #[error("polynomial degree must be at least 1")]
    ZeroDegree,
    #[error("bound requires {expected} activation, architecture uses {found}")]
    WrongActivation {
        expected: &'static str,
        found: &'static str,
    },
    #[error("layer {layer} outside valid range {min}..={max}")]
    LayerOutOfRange { layer: usize, min: usize, max: usize },
    #[error("{name} must be at least 1")]
    NonPositive { name: &'static str },
    #[error("free width index {0} is not a hidden layer")]
    InvalidFreeWidth(usize),
    #[error("target unreachable: bound at width cap {cap} is {bound_at_cap}")]
    Unreachable { cap: usize, bound_at_cap: BigCount },
    #[error("bound decreased from width {width} to {next}; monotonicity assumption violated")]
    NonMonotone { width: usize, next: usize },
}

pub type Result<T, E = BoundsError> = std::result::Result<T, E>;

/// Non-fatal conditions attached to evaluated bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundWarning {
    /// Widths increase somewhere, outside the theorems' non-increasing hypothesis.
    NotNonIncreasing,
    /// A cover intersection required by the union bound was absent and counted as zero.
    MissingCoverEntry(Vec<usize>),
}
