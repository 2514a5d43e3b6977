use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Matrix, MlpError, Result};
use crate::scalar::Scalar;

/// Elementwise activation shared by every hidden layer.
#[derive(Debug, Clone, PartialEq)]
pub enum Activation<T> {
    Relu,
    /// `σ(x) = c_0 + c_1 x + … + c_r x^r`, coefficients in ascending order.
    Polynomial(Vec<T>),
}

impl<T: Scalar> Activation<T> {
    /// `σ(x) = x²`.
    pub fn square() -> Self {
        Activation::Polynomial(vec![T::zero(), T::zero(), T::one()])
    }

    pub fn is_relu(&self) -> bool {
        matches!(self, Activation::Relu)
    }

    /// Polynomial degree ignoring trailing zero coefficients; `None` for ReLU.
    pub fn degree(&self) -> Option<usize> {
        match self {
            Activation::Relu => None,
            Activation::Polynomial(c) => Some(c.iter().rposition(|v| *v != T::zero()).unwrap_or(0)),
        }
    }

    #[inline]
    pub fn apply(&self, x: T) -> T {
        match self {
            Activation::Relu => x.max(T::zero()),
            Activation::Polynomial(c) => c.iter().rev().fold(T::zero(), |acc, &a| acc * x + a),
        }
    }

    /// Derivative; ReLU uses 0 at the kink.
    #[inline]
    pub fn derivative(&self, x: T) -> T {
        match self {
            Activation::Relu => {
                if x > T::zero() {
                    T::one()
                } else {
                    T::zero()
                }
            }
            Activation::Polynomial(c) => {
                let mut acc = T::zero();
                for (k, &a) in c.iter().enumerate().skip(1).rev() {
                    acc = acc * x + a * T::lit(k as f64);
                }
                acc
            }
        }
    }
}

/// Affine map `x ↦ W x + b` with `W` of shape `out × in`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseLayer<T> {
    pub weight: Matrix<T>,
    pub bias: Vec<T>,
}

impl<T: Scalar> DenseLayer<T> {
    pub fn new(weight: Matrix<T>, bias: Vec<T>) -> Result<Self> {
        if weight.rows() != bias.len() {
            return Err(MlpError::Shape(format!(
                "bias length {} does not match {} output rows",
                bias.len(),
                weight.rows()
            )));
        }
        if !weight.is_finite() || bias.iter().any(|b| !b.is_finite()) {
            return Err(MlpError::NonFiniteParameter);
        }
        Ok(Self { weight, bias })
    }

    /// Glorot-uniform weights, zero bias.
    pub fn glorot(inputs: usize, outputs: usize, rng: &mut ChaCha8Rng) -> Self {
        let limit = (6.0 / (inputs + outputs) as f64).sqrt();
        let dist = Uniform::new_inclusive(-limit, limit);
        let data = (0..inputs * outputs).map(|_| T::lit(dist.sample(rng))).collect();
        Self {
            weight: Matrix::from_vec(outputs, inputs, data),
            bias: vec![T::zero(); outputs],
        }
    }

    pub fn inputs(&self) -> usize {
        self.weight.cols()
    }

    pub fn outputs(&self) -> usize {
        self.weight.rows()
    }

    /// Row-wise `x W^T + b` for a batch.
    pub fn forward(&self, batch: &Matrix<T>) -> Matrix<T> {
        let mut z = batch.mul_transpose(&self.weight);
        for r in 0..z.rows() {
            for (v, &b) in z.row_mut(r).iter_mut().zip(&self.bias) {
                *v += b;
            }
        }
        z
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        let mut z = self.weight.apply(x);
        for (v, &b) in z.iter_mut().zip(&self.bias) {
            *v += b;
        }
        z
    }
}

/// Batch normalisation with running statistics for inference.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchNorm<T> {
    pub gamma: Vec<T>,
    pub beta: Vec<T>,
    pub running_mean: Vec<T>,
    pub running_var: Vec<T>,
    pub epsilon: T,
    pub momentum: T,
}

impl<T: Scalar> BatchNorm<T> {
    pub fn new(width: usize) -> Self {
        Self {
            gamma: vec![T::one(); width],
            beta: vec![T::zero(); width],
            running_mean: vec![T::zero(); width],
            running_var: vec![T::one(); width],
            epsilon: T::lit(1e-5),
            momentum: T::lit(0.1),
        }
    }

    pub fn width(&self) -> usize {
        self.gamma.len()
    }

    /// Inference-mode map as `(scale, shift)`: `y = scale ⊙ x + shift`.
    pub fn affine(&self) -> (Vec<T>, Vec<T>) {
        let scale: Vec<T> = self
            .gamma
            .iter()
            .zip(&self.running_var)
            .map(|(&g, &v)| g / (v + self.epsilon).sqrt())
            .collect();
        let shift = scale
            .iter()
            .zip(&self.running_mean)
            .zip(&self.beta)
            .map(|((&s, &m), &b)| b - s * m)
            .collect();
        (scale, shift)
    }

    pub fn infer(&self, batch: &mut Matrix<T>) {
        let (scale, shift) = self.affine();
        for r in 0..batch.rows() {
            for ((v, &s), &t) in batch.row_mut(r).iter_mut().zip(&scale).zip(&shift) {
                *v = s * *v + t;
            }
        }
    }

    pub fn infer_vec(&self, x: &mut [T]) {
        let (scale, shift) = self.affine();
        for ((v, &s), &t) in x.iter_mut().zip(&scale).zip(&shift) {
            *v = s * *v + t;
        }
    }

    fn validate(&self) -> Result<()> {
        let w = self.width();
        if [self.beta.len(), self.running_mean.len(), self.running_var.len()]
            .iter()
            .any(|&l| l != w)
        {
            return Err(MlpError::Shape("batch-norm vectors differ in length".into()));
        }
        if self.running_var.iter().any(|&v| v < T::zero()) || self.epsilon <= T::zero() {
            return Err(MlpError::Shape(
                "batch-norm variance must be nonnegative and epsilon positive".into(),
            ));
        }
        Ok(())
    }
}

/// Hidden layer: affine map, activation, then optional batch normalisation.
#[derive(Debug, Clone, PartialEq)]
pub struct HiddenLayer<T> {
    pub dense: DenseLayer<T>,
    pub batch_norm: Option<BatchNorm<T>>,
}

/// Dense classifier `softmax ∘ f_l ∘ σ ∘ f_{l-1} ∘ … ∘ σ ∘ f_1`.
///
/// Layer `k` for `1 <= k < l` is hidden layer `k`; its representation is the
/// post-activation, post-batch-norm vector. Layer `l` produces the logits.
#[derive(Debug, Clone, PartialEq)]
pub struct Network<T> {
    pub hidden: Vec<HiddenLayer<T>>,
    pub output: DenseLayer<T>,
    pub activation: Activation<T>,
}

/// Activations of every layer for a batch (inference mode).
#[derive(Debug, Clone, PartialEq)]
pub struct ForwardPass<T> {
    /// `layers[0]` is the input, `layers[k]` the output of hidden layer `k`.
    pub layers: Vec<Matrix<T>>,
    pub logits: Matrix<T>,
    pub probabilities: Matrix<T>,
}

impl<T: Scalar> Network<T> {
    pub fn new(hidden: Vec<HiddenLayer<T>>, output: DenseLayer<T>, activation: Activation<T>) -> Result<Self> {
        let net = Self {
            hidden,
            output,
            activation,
        };
        net.validate()?;
        Ok(net)
    }

    /// Random network with widths `n_0..=n_l`, Glorot-uniform weights from `seed`.
    pub fn random(widths: &[usize], activation: Activation<T>, batch_norm: bool, seed: u64) -> Result<Self> {
        if widths.len() < 2 {
            return Err(MlpError::Shape("need at least input and output widths".into()));
        }
        if widths.contains(&0) {
            return Err(MlpError::Shape("widths must be positive".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = widths.len() - 1;
        let hidden = (1..l)
            .map(|k| HiddenLayer {
                dense: DenseLayer::glorot(widths[k - 1], widths[k], &mut rng),
                batch_norm: batch_norm.then(|| BatchNorm::new(widths[k])),
            })
            .collect();
        let output = DenseLayer::glorot(widths[l - 1], widths[l], &mut rng);
        Self::new(hidden, output, activation)
    }

    fn validate(&self) -> Result<()> {
        let mut prev = self
            .hidden
            .first()
            .map_or(self.output.inputs(), |h| h.dense.inputs());
        for (k, h) in self.hidden.iter().enumerate() {
            if h.dense.inputs() != prev {
                return Err(MlpError::Shape(format!(
                    "layer {} expects {} inputs, previous layer has {prev}",
                    k + 1,
                    h.dense.inputs()
                )));
            }
            if let Some(bn) = &h.batch_norm {
                bn.validate()?;
                if bn.width() != h.dense.outputs() {
                    return Err(MlpError::Shape(format!("batch-norm width mismatch at layer {}", k + 1)));
                }
            }
            prev = h.dense.outputs();
        }
        if self.output.inputs() != prev {
            return Err(MlpError::Shape("output layer input width mismatch".into()));
        }
        if self.output.outputs() < 2 {
            return Err(MlpError::Shape("need at least two classes".into()));
        }
        if let Activation::Polynomial(c) = &self.activation {
            if c.is_empty() {
                return Err(MlpError::Shape("polynomial activation needs coefficients".into()));
            }
        }
        Ok(())
    }

    /// Widths `n_0..=n_l`.
    pub fn widths(&self) -> Vec<usize> {
        let mut w = vec![self.input_dim()];
        w.extend(self.hidden.iter().map(|h| h.dense.outputs()));
        w.push(self.output.outputs());
        w
    }

    pub fn input_dim(&self) -> usize {
        self.hidden
            .first()
            .map_or(self.output.inputs(), |h| h.dense.inputs())
    }

    /// Number of dense layers `l`.
    pub fn depth(&self) -> usize {
        self.hidden.len() + 1
    }

    pub fn classes(&self) -> usize {
        self.output.outputs()
    }

    /// Dense layer `k` in `1..=l`.
    pub fn dense(&self, k: usize) -> &DenseLayer<T> {
        if k == self.depth() {
            &self.output
        } else {
            &self.hidden[k - 1].dense
        }
    }

    /// Inference-mode forward pass.
    pub fn forward(&self, batch: &Matrix<T>) -> Result<ForwardPass<T>> {
        if batch.cols() != self.input_dim() {
            return Err(MlpError::Shape(format!(
                "batch has {} features, network expects {}",
                batch.cols(),
                self.input_dim()
            )));
        }
        let mut layers = Vec::with_capacity(self.depth());
        layers.push(batch.clone());
        for h in &self.hidden {
            let mut a = h.dense.forward(layers.last().expect("input present"));
            for v in a.as_mut_slice() {
                *v = self.activation.apply(*v);
            }
            if let Some(bn) = &h.batch_norm {
                bn.infer(&mut a);
            }
            layers.push(a);
        }
        let logits = self.output.forward(layers.last().expect("nonempty"));
        let probabilities = softmax_rows(&logits);
        Ok(ForwardPass {
            layers,
            logits,
            probabilities,
        })
    }

    /// Logits from a single vector at `layer`: the input for `layer == 0`, otherwise
    /// the post-activation value of hidden layer `layer` *before* its batch norm.
    pub fn logits_from(&self, layer: usize, x: &[T]) -> Vec<T> {
        assert!(layer < self.depth(), "layer must be below the output");
        let mut v = x.to_vec();
        if layer > 0 {
            if let Some(bn) = &self.hidden[layer - 1].batch_norm {
                bn.infer_vec(&mut v);
            }
        }
        for h in &self.hidden[layer..] {
            v = h.dense.apply(&v);
            for e in &mut v {
                *e = self.activation.apply(*e);
            }
            if let Some(bn) = &h.batch_norm {
                bn.infer_vec(&mut v);
            }
        }
        self.output.apply(&v)
    }

    pub fn predict(&self, batch: &Matrix<T>) -> Result<Vec<usize>> {
        let pass = self.forward(batch)?;
        Ok(pass.logits.row_iter().map(argmax).collect())
    }

    /// Equivalent network without batch norm: each inference-mode normalisation is
    /// absorbed into the following dense layer. Hidden representations become the
    /// post-activation values before normalisation.
    pub fn fold_batch_norm(&self) -> Self {
        let mut hidden: Vec<HiddenLayer<T>> = self
            .hidden
            .iter()
            .map(|h| HiddenLayer {
                dense: h.dense.clone(),
                batch_norm: None,
            })
            .collect();
        let mut output = self.output.clone();
        for k in 0..self.hidden.len() {
            let Some(bn) = &self.hidden[k].batch_norm else {
                continue;
            };
            let (scale, shift) = bn.affine();
            let next = if k + 1 < hidden.len() {
                &mut hidden[k + 1].dense
            } else {
                &mut output
            };
            let extra = next.weight.apply(&shift);
            for (b, e) in next.bias.iter_mut().zip(extra) {
                *b += e;
            }
            for r in 0..next.weight.rows() {
                for (w, &s) in next.weight.row_mut(r).iter_mut().zip(&scale) {
                    *w *= s;
                }
            }
        }
        Self {
            hidden,
            output,
            activation: self.activation.clone(),
        }
    }

    /// Mutable views of all trainable parameters in a fixed order: per hidden layer
    /// weight, bias, then gamma and beta when present; output weight and bias last.
    pub fn parameters_mut(&mut self) -> Vec<&mut [T]> {
        let mut out: Vec<&mut [T]> = Vec::new();
        for h in &mut self.hidden {
            out.push(h.dense.weight.as_mut_slice());
            out.push(&mut h.dense.bias);
            if let Some(bn) = &mut h.batch_norm {
                out.push(&mut bn.gamma);
                out.push(&mut bn.beta);
            }
        }
        out.push(self.output.weight.as_mut_slice());
        out.push(&mut self.output.bias);
        out
    }

    pub fn parameters(&self) -> Vec<&[T]> {
        let mut out: Vec<&[T]> = Vec::new();
        for h in &self.hidden {
            out.push(h.dense.weight.as_slice());
            out.push(&h.dense.bias);
            if let Some(bn) = &h.batch_norm {
                out.push(&bn.gamma);
                out.push(&bn.beta);
            }
        }
        out.push(self.output.weight.as_slice());
        out.push(&self.output.bias);
        out
    }
}

pub(crate) fn argmax<T: Scalar>(row: &[T]) -> usize {
    let mut best = 0;
    for (i, &v) in row.iter().enumerate() {
        if v > row[best] {
            best = i;
        }
    }
    best
}

/// Numerically stable row-wise softmax.
pub fn softmax_rows<T: Scalar>(logits: &Matrix<T>) -> Matrix<T> {
    let mut out = logits.clone();
    for r in 0..out.rows() {
        let row = out.row_mut(r);
        let max = row.iter().copied().fold(T::neg_infinity(), T::max);
        let mut sum = T::zero();
        for v in row.iter_mut() {
            *v = (*v - max).exp();
            sum += *v;
        }
        for v in row.iter_mut() {
            *v /= sum;
        }
    }
    out
}
