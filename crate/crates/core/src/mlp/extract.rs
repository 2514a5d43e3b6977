use super::network::Network;
use super::{Dataset, Matrix, MlpError, Result};
use crate::homology::PointCloud;
use crate::scalar::Scalar;

/// Hidden-layer representations of sampled points from one class.
#[derive(Debug, Clone, PartialEq)]
pub struct ActivationDump<T> {
    pub layer: usize,
    pub class: usize,
    /// Dataset rows the activations came from, ascending.
    pub indices: Vec<usize>,
    /// One row per sampled point, width `n_layer`.
    pub activations: Matrix<T>,
}

impl<T: Scalar> ActivationDump<T> {
    pub fn to_point_cloud(&self) -> PointCloud<T> {
        PointCloud::from_flat(self.activations.cols(), self.activations.as_slice().to_vec())
            .expect("activation rows are finite and of equal width")
    }
}

/// Post-batch-norm (inference-mode) activations of hidden layer `layer` for up to
/// `cap` points labelled `class`, sampled with `seed`.
pub fn extract_class_activations<T: Scalar>(
    net: &Network<T>,
    data: &Dataset<T>,
    layer: usize,
    class: usize,
    cap: usize,
    seed: u64,
) -> Result<ActivationDump<T>> {
    if layer == 0 || layer >= net.depth() {
        return Err(MlpError::LayerOutOfRange {
            layer,
            min: 1,
            max: net.depth() - 1,
        });
    }
    let indices = data.sample_class(class, cap, seed)?;
    let batch = data.features().select_rows(&indices);
    let mut pass = net.forward(&batch)?;
    let activations = pass.layers.swap_remove(layer);
    if !activations.is_finite() {
        return Err(MlpError::NonFiniteParameter);
    }
    Ok(ActivationDump {
        layer,
        class,
        indices,
        activations,
    })
}
