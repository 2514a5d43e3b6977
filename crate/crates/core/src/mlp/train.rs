use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::network::{argmax, softmax_rows, Network};
use super::{Dataset, Matrix, MlpError, Result};
use crate::scalar::Scalar;

/// Mini-batch SGD settings.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    pub batch_size: usize,
    pub seed: u64,
    /// Heavy-ball momentum; 0 gives plain SGD.
    pub momentum: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            epochs: 20,
            learning_rate: 0.05,
            batch_size: 32,
            seed: 0,
            momentum: 0.9,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpochRecord {
    pub epoch: usize,
    /// Mean training-mode cross-entropy over the epoch's batches.
    pub mean_loss: f64,
    /// Inference-mode accuracy on the full training set after the epoch.
    pub accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrainingLog {
    pub epochs: Vec<EpochRecord>,
}

impl TrainingLog {
    pub fn final_accuracy(&self) -> Option<f64> {
        self.epochs.last().map(|e| e.accuracy)
    }

    pub fn final_loss(&self) -> Option<f64> {
        self.epochs.last().map(|e| e.mean_loss)
    }

    /// CSV with header `epoch,mean_loss,accuracy`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("epoch,mean_loss,accuracy\n");
        for e in &self.epochs {
            out.push_str(&format!("{},{},{}\n", e.epoch, e.mean_loss, e.accuracy));
        }
        out
    }
}

/// Gradients laid out like [`Network::parameters`].
pub type Gradients<T> = Vec<Vec<T>>;

type StepOutput<T> = (T, Gradients<T>, Vec<Option<BatchStats<T>>>);

struct BatchStats<T> {
    mean: Vec<T>,
    var: Vec<T>,
}

struct LayerCache<T> {
    input: Matrix<T>,
    pre: Matrix<T>,
    /// Normalised activations and inverse standard deviations when batch norm is on.
    norm: Option<(Matrix<T>, Vec<T>)>,
}

/// Training-mode loss and gradients on a batch; batch norm uses batch statistics.
/// The network is not modified.
pub fn loss_and_gradients<T: Scalar>(
    net: &Network<T>,
    batch: &Matrix<T>,
    labels: &[usize],
) -> Result<(T, Gradients<T>)> {
    let (loss, grads, _) = training_step(net, batch, labels)?;
    Ok((loss, grads))
}

fn training_step<T: Scalar>(
    net: &Network<T>,
    batch: &Matrix<T>,
    labels: &[usize],
) -> Result<StepOutput<T>> {
    if batch.cols() != net.input_dim() || batch.rows() != labels.len() || batch.rows() == 0 {
        return Err(MlpError::Shape(format!(
            "batch {}x{} with {} labels does not fit a network with {} inputs",
            batch.rows(),
            batch.cols(),
            labels.len(),
            net.input_dim()
        )));
    }
    if let Some(&l) = labels.iter().find(|&&l| l >= net.classes()) {
        return Err(MlpError::Shape(format!("label {l} exceeds class count {}", net.classes())));
    }
    let n = batch.rows();
    let nt = T::lit(n as f64);
    let mut caches = Vec::with_capacity(net.hidden.len());
    let mut stats = Vec::with_capacity(net.hidden.len());
    let mut x = batch.clone();
    for h in &net.hidden {
        let pre = h.dense.forward(&x);
        let mut a = pre.clone();
        for v in a.as_mut_slice() {
            *v = net.activation.apply(*v);
        }
        let mut norm = None;
        let mut layer_stats = None;
        if let Some(bn) = &h.batch_norm {
            let w = bn.width();
            let mut mean = vec![T::zero(); w];
            for row in a.row_iter() {
                for (m, &v) in mean.iter_mut().zip(row) {
                    *m += v;
                }
            }
            for m in &mut mean {
                *m /= nt;
            }
            let mut var = vec![T::zero(); w];
            for row in a.row_iter() {
                for ((s, &v), &m) in var.iter_mut().zip(row).zip(&mean) {
                    *s += (v - m) * (v - m);
                }
            }
            for s in &mut var {
                *s /= nt;
            }
            let inv_std: Vec<T> = var.iter().map(|&v| T::one() / (v + bn.epsilon).sqrt()).collect();
            let mut xhat = a.clone();
            for r in 0..n {
                for (j, v) in xhat.row_mut(r).iter_mut().enumerate() {
                    *v = (*v - mean[j]) * inv_std[j];
                }
            }
            for r in 0..n {
                let src = xhat.row(r).to_vec();
                for (j, v) in a.row_mut(r).iter_mut().enumerate() {
                    *v = bn.gamma[j] * src[j] + bn.beta[j];
                }
            }
            norm = Some((xhat, inv_std));
            layer_stats = Some(BatchStats { mean, var });
        }
        caches.push(LayerCache { input: x, pre, norm });
        stats.push(layer_stats);
        x = a;
    }
    let logits = net.output.forward(&x);
    let probs = softmax_rows(&logits);
    let mut loss = T::zero();
    for (r, &y) in labels.iter().enumerate() {
        let row = logits.row(r);
        let max = row.iter().copied().fold(T::neg_infinity(), T::max);
        let lse = row.iter().map(|&v| (v - max).exp()).sum::<T>().ln() + max;
        loss += lse - row[y];
    }
    loss /= nt;

    let mut dz = probs;
    for (r, &y) in labels.iter().enumerate() {
        let row = dz.row_mut(r);
        row[y] -= T::one();
        for v in row.iter_mut() {
            *v /= nt;
        }
    }
    let mut reversed: Vec<Vec<T>> = Vec::new();
    reversed.push(column_sums(&dz));
    reversed.push(dz.transpose_mul(&x).as_slice().to_vec());
    let mut da = dz.mul(&net.output.weight);
    for (h, cache) in net.hidden.iter().zip(caches).rev() {
        if let (Some(bn), Some((xhat, inv_std))) = (&h.batch_norm, &cache.norm) {
            let w = bn.width();
            let mut dgamma = vec![T::zero(); w];
            let mut dbeta = vec![T::zero(); w];
            for r in 0..n {
                for j in 0..w {
                    let dy = da.get(r, j);
                    dgamma[j] += dy * xhat.get(r, j);
                    dbeta[j] += dy;
                }
            }
            let mut dx = Matrix::zeros(n, w);
            for r in 0..n {
                for j in 0..w {
                    let dy = da.get(r, j);
                    let v = bn.gamma[j] * inv_std[j] / nt
                        * (nt * dy - dbeta[j] - xhat.get(r, j) * dgamma[j]);
                    dx.set(r, j, v);
                }
            }
            reversed.push(dbeta);
            reversed.push(dgamma);
            da = dx;
        }
        let mut dpre = da;
        for (d, &z) in dpre.as_mut_slice().iter_mut().zip(cache.pre.as_slice()) {
            *d *= net.activation.derivative(z);
        }
        reversed.push(column_sums(&dpre));
        reversed.push(dpre.transpose_mul(&cache.input).as_slice().to_vec());
        da = dpre.mul(&h.dense.weight);
    }
    // Pushed back to front, so reversing restores the parameter order.
    reversed.reverse();
    Ok((loss, reversed, stats))
}

fn column_sums<T: Scalar>(m: &Matrix<T>) -> Vec<T> {
    let mut out = vec![T::zero(); m.cols()];
    for row in m.row_iter() {
        for (o, &v) in out.iter_mut().zip(row) {
            *o += v;
        }
    }
    out
}

/// Inference-mode mean cross-entropy.
pub fn cross_entropy<T: Scalar>(net: &Network<T>, data: &Dataset<T>) -> Result<T> {
    let pass = net.forward(data.features())?;
    let mut loss = T::zero();
    for (r, &y) in data.labels().iter().enumerate() {
        let row = pass.logits.row(r);
        let max = row.iter().copied().fold(T::neg_infinity(), T::max);
        let lse = row.iter().map(|&v| (v - max).exp()).sum::<T>().ln() + max;
        loss += lse - row[y];
    }
    Ok(loss / T::lit(data.len() as f64))
}

/// Inference-mode classification accuracy.
pub fn accuracy<T: Scalar>(net: &Network<T>, data: &Dataset<T>) -> Result<f64> {
    let pass = net.forward(data.features())?;
    let correct = pass
        .logits
        .row_iter()
        .zip(data.labels())
        .filter(|(row, &y)| argmax(row) == y)
        .count();
    Ok(correct as f64 / data.len() as f64)
}

/// Mini-batch SGD on softmax cross-entropy. Deterministic given `config.seed`.
pub fn train_sgd<T: Scalar>(net: &mut Network<T>, data: &Dataset<T>, config: &TrainConfig) -> Result<TrainingLog> {
    if config.batch_size == 0 {
        return Err(MlpError::InvalidConfig("batch size must be positive".into()));
    }
    if !config.learning_rate.is_finite() || config.learning_rate < 0.0 {
        return Err(MlpError::InvalidConfig("learning rate must be finite and nonnegative".into()));
    }
    if !(0.0..1.0).contains(&config.momentum) {
        return Err(MlpError::InvalidConfig("momentum must lie in [0, 1)".into()));
    }
    if data.feature_dim() != net.input_dim() || data.classes() > net.classes() {
        return Err(MlpError::Shape(format!(
            "dataset ({} features, {} classes) does not fit network widths {:?}",
            data.feature_dim(),
            data.classes(),
            net.widths()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let lr = T::lit(config.learning_rate);
    let mu = T::lit(config.momentum);
    let mut velocity: Vec<Vec<T>> = net.parameters().iter().map(|p| vec![T::zero(); p.len()]).collect();
    let mut order: Vec<usize> = (0..data.len()).collect();
    let mut log = TrainingLog::default();
    for epoch in 0..config.epochs {
        order.shuffle(&mut rng);
        let mut total = 0.0;
        let mut batches = 0usize;
        for (b, chunk) in order.chunks(config.batch_size).enumerate() {
            let x = data.features().select_rows(chunk);
            let y: Vec<usize> = chunk.iter().map(|&i| data.labels()[i]).collect();
            let (loss, grads, stats) = training_step(net, &x, &y)?;
            if !loss.is_finite() {
                return Err(MlpError::NonFiniteLoss {
                    epoch,
                    batch: b,
                    loss: loss.as_f64(),
                });
            }
            total += loss.as_f64();
            batches += 1;
            for ((p, g), v) in net.parameters_mut().into_iter().zip(&grads).zip(&mut velocity) {
                for ((pi, &gi), vi) in p.iter_mut().zip(g).zip(v.iter_mut()) {
                    *vi = mu * *vi + gi;
                    *pi -= lr * *vi;
                }
            }
            let nb = chunk.len();
            for (h, s) in net.hidden.iter_mut().zip(stats) {
                let (Some(bn), Some(s)) = (&mut h.batch_norm, s) else {
                    continue;
                };
                let unbias = if nb > 1 { T::lit(nb as f64 / (nb - 1) as f64) } else { T::one() };
                let m = bn.momentum;
                for j in 0..bn.width() {
                    bn.running_mean[j] = (T::one() - m) * bn.running_mean[j] + m * s.mean[j];
                    bn.running_var[j] = (T::one() - m) * bn.running_var[j] + m * s.var[j] * unbias;
                }
            }
        }
        let accuracy = accuracy(net, data)?;
        log.epochs.push(EpochRecord {
            epoch,
            mean_loss: total / batches.max(1) as f64,
            accuracy,
        });
    }
    Ok(log)
}
