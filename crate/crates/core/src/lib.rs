//! Topological complexity of datasets and dense networks.
//!
//! * [`homology`]: Vietoris–Rips persistent homology and brute-force Betti oracles.
//! * [`bounds`]: exact upper bounds on per-layer Betti numbers of class pre-images.
//! * [`mlp`]: a small dense-network trainer with per-class activation extraction.
//! * [`semialgebraic`]: decision-boundary covers as polynomial and affine systems.
//! * [`advisor`]: input vs. layer Betti profiles and width recommendations.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases below fix the
//! double-precision instantiation used by the command-line tool.

pub mod advisor;
pub mod bounds;
pub mod data;
pub mod homology;
pub mod mlp;
pub mod scalar;
pub mod semialgebraic;

pub use scalar::Scalar;

pub type PointCloud = homology::PointCloud<f64>;
pub type DistanceMatrix = homology::DistanceMatrix<f64>;
pub type Filtration = homology::Filtration<f64>;
pub type Barcode = homology::Barcode<f64>;
pub type Network = mlp::Network<f64>;
pub type Dataset = mlp::Dataset<f64>;
pub type MultiPoly = semialgebraic::MultiPoly<f64>;
pub use semialgebraic::AffineSolution;
