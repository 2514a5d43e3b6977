//! Dense classifiers: affine layers, ReLU or polynomial activation, batch
//! normalisation, softmax cross-entropy, mini-batch SGD and activation extraction.

mod checkpoint;
mod dataset;
mod extract;
mod gradcheck;
mod matrix;
mod network;
mod train;

pub use checkpoint::{from_checkpoint, load_checkpoint, save_checkpoint, to_checkpoint};
pub use dataset::Dataset;
pub use extract::{extract_class_activations, ActivationDump};
pub use gradcheck::{gradient_check, GradientCheck};
pub use matrix::Matrix;
pub use network::{softmax_rows, Activation, BatchNorm, DenseLayer, ForwardPass, HiddenLayer, Network};
pub use train::{
    accuracy, cross_entropy, loss_and_gradients, train_sgd, EpochRecord, Gradients, TrainConfig, TrainingLog,
};

#[derive(Debug, thiserror::Error)]
pub enum MlpError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parameters must be finite")]
    NonFiniteParameter,
    #[error("loss became non-finite ({loss}) at epoch {epoch}, batch {batch}; lower the learning rate")]
    NonFiniteLoss { epoch: usize, batch: usize, loss: f64 },
    #[error("class {class} has no samples")]
    EmptyClass { class: usize },
    #[error("layer {layer} is outside {min}..={max}")]
    LayerOutOfRange { layer: usize, min: usize, max: usize },
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("invalid training configuration: {0}")]
    InvalidConfig(String),
    #[error("checkpoint token {token}: {reason}")]
    Checkpoint { token: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = MlpError> = std::result::Result<T, E>;
