//! Decision-boundary covers: symbolic logit polynomials for polynomial activations
//! and explicit affine parameterisations for ReLU networks, with sampling-based
//! membership verification.

mod compose;
mod cover;
mod poly;
mod relu;
mod report;

pub use compose::{compose_network_poly, degree_bound_check, DegreeCheck, PolyCaps};
pub use cover::{cover_intersection, poly_cover, CoverDescriptor};
pub use poly::MultiPoly;
pub use relu::{
    relu_cover_solve, sample_boundary, verify_ambiguity, AffineSolution, AmbiguityCheck, BoundaryPoint, LayerSolve,
    SampleConfig, SampleReport, RANK_TOLERANCE,
};
pub use report::{cover_report_text, verify_class_covers, verify_cover, CoverReportEntry};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SemialgebraicError {
    #[error("network activation is not polynomial")]
    NotPolynomial,
    #[error("network activation is not ReLU")]
    NotRelu,
    #[error("layer {layer} is outside 0..={max}")]
    LayerOutOfRange { layer: usize, max: usize },
    #[error("{what} {value} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, value: usize, cap: usize },
    #[error("composition produced {count} monomials, above the cap of {cap}")]
    TooManyMonomials { count: usize, cap: usize },
    #[error("class {class} is not in 0..{classes}")]
    InvalidClass { class: usize, classes: usize },
    #[error("index set {alphas:?} is invalid for class {class}")]
    InvalidAlphas { alphas: Vec<usize>, class: usize },
    #[error("weights of layer {layer} are rank deficient (smallest pivot singular value {smallest_singular_value:.3e})")]
    RankDeficient { layer: usize, smallest_singular_value: f64 },
}

pub type Result<T, E = SemialgebraicError> = std::result::Result<T, E>;
