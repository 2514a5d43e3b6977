//! Vietoris–Rips persistent homology over Z/2.
//!
//! Conventions used throughout:
//!
//! * A simplex is born at its diameter, so an edge between two points at
//!   distance `t` enters the filtration at `t`. Plots against "radius" use this
//!   edge-length scale, not the ball radius `t / 2`.
//! * Intervals are half-open `[birth, death)`. Zero-length intervals are counted
//!   during reduction but dropped from reported barcodes.
//! * The filtration order is `(birth, dimension, lexicographic vertices)`.

mod barcode;
mod boundary;
mod cloud;
mod oracle;
mod reduce;
mod rips;
pub mod svg;

pub use barcode::{betti_at, format_significant, Barcode, Death, Interval};
pub use boundary::BoundaryMatrix;
pub use cloud::{pairwise_distances, DistanceMatrix, PointCloud};
pub use oracle::{brute_force_betti, complex_betti, gf2_rank, BRUTE_FORCE_MAX_POINTS};
pub use reduce::{compute_persistence, compute_persistence_with, persistence_pairs, PersistencePair, Reduction};
pub use rips::{build_rips, Filtration, Simplex, MAX_HOMOLOGY_DIM};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HomologyError {
    #[error("point cloud is empty")]
    EmptyCloud,
    #[error("point {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("points must have dimension at least 1")]
    ZeroDimension,
    #[error("non-finite coordinate in point {index}")]
    NonFiniteCoordinate { index: usize },
    #[error("distance matrix has {found} entries, expected {expected}")]
    DistanceShape { expected: usize, found: usize },
    #[error("distance matrix entry ({row}, {col}) is invalid: {reason}")]
    InvalidDistance {
        row: usize,
        col: usize,
        reason: &'static str,
    },
    #[error("max_dim {0} outside supported range 0..={MAX_HOMOLOGY_DIM}")]
    UnsupportedDimension(usize),
    #[error("max_radius must be positive and finite")]
    InvalidRadius,
    #[error("brute-force oracle limited to {limit} points, got {found}")]
    TooManyPoints { limit: usize, found: usize },
    #[error("simplex {simplex:?} is missing face {face:?}")]
    NotClosedUnderFaces { simplex: Vec<usize>, face: Vec<usize> },
    #[error("simplex {0:?} has repeated vertices")]
    DegenerateSimplex(Vec<usize>),
    #[error("barcode line {line}: {reason}")]
    BarcodeParse { line: usize, reason: String },
}

pub type Result<T, E = HomologyError> = std::result::Result<T, E>;
