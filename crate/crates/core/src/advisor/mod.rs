//! Compares per-class Betti profiles of input data and hidden-layer
//! representations, flags representations that lose connected components, and
//! sweeps widths to relate topology to accuracy.

mod compare;
mod profile;
mod sweep;

pub use compare::{compare, ClassComparison, ExpressivenessReport};
pub use profile::{cloud_curve, input_profile, layer_profile, log_grid, ClassCurve, ClassProfile, GridSpec, ProfileConfig};
pub use sweep::{median, spearman, width_sweep, RunOutcome, SweepConfig, SweepResult, SweepRun};

/// Default fraction of the input `b_0` below which a layer is flagged.
pub const DEFAULT_THRESHOLD_FRACTION: f64 = 0.5;

#[derive(Debug, thiserror::Error)]
pub enum AdvisorError {
    #[error("per-class cap must be at least 2, got {0}")]
    CapTooSmall(usize),
    #[error("radius grid must be nonempty, positive and strictly increasing")]
    InvalidGrid,
    #[error("profiles cover different classes: input {input:?}, layer {layer:?}")]
    ClassMismatch { input: Vec<usize>, layer: Vec<usize> },
    #[error("sweep needs at least one width and one seed")]
    EmptySweep,
    #[error("sweep widths must be positive and strictly increasing, got {0:?}")]
    WidthsNotIncreasing(Vec<usize>),
    #[error(transparent)]
    Mlp(#[from] crate::mlp::MlpError),
    #[error(transparent)]
    Homology(#[from] crate::homology::HomologyError),
}

pub type Result<T, E = AdvisorError> = std::result::Result<T, E>;
