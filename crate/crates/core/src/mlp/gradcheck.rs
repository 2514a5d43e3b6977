use super::network::{Activation, Network};
use super::train::loss_and_gradients;
use super::{Matrix, Result};

/// Outcome of comparing backprop against central differences.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientCheck {
    /// Max over parameters of `|analytic - fd| / max(|analytic|, |fd|, 1e-8)`.
    pub max_relative_error: f64,
    pub max_absolute_error: f64,
    pub parameters_checked: usize,
    /// Batch rows nudged away from ReLU kinks before checking.
    pub rows_perturbed: usize,
}

const KINK_MARGIN: f64 = 1e-3;

/// Checks every trainable parameter with central differences of step `step`.
/// For ReLU networks, rows whose pre-activations fall within a small margin of
/// zero are shifted until every pre-activation clears the margin.
pub fn gradient_check(net: &Network<f64>, batch: &Matrix<f64>, labels: &[usize], step: f64) -> Result<GradientCheck> {
    let (batch, rows_perturbed) = if net.activation.is_relu() {
        avoid_kinks(net, batch)
    } else {
        (batch.clone(), 0)
    };
    let (_, analytic) = loss_and_gradients(net, &batch, labels)?;
    let mut probe = net.clone();
    let mut max_rel = 0.0f64;
    let mut max_abs = 0.0f64;
    let mut checked = 0;
    for (block, grad) in analytic.iter().enumerate() {
        for (i, &a) in grad.iter().enumerate() {
            let original = probe.parameters()[block][i];
            probe.parameters_mut()[block][i] = original + step;
            let (up, _) = loss_and_gradients(&probe, &batch, labels)?;
            probe.parameters_mut()[block][i] = original - step;
            let (down, _) = loss_and_gradients(&probe, &batch, labels)?;
            probe.parameters_mut()[block][i] = original;
            let fd = (up - down) / (2.0 * step);
            let rel = (a - fd).abs() / a.abs().max(fd.abs()).max(1e-8);
            max_rel = max_rel.max(rel);
            max_abs = max_abs.max((a - fd).abs());
            checked += 1;
        }
    }
    Ok(GradientCheck {
        max_relative_error: max_rel,
        max_absolute_error: max_abs,
        parameters_checked: checked,
        rows_perturbed,
    })
}

fn min_abs_preactivation(net: &Network<f64>, x: &[f64]) -> f64 {
    let mut v = x.to_vec();
    let mut min = f64::INFINITY;
    for h in &net.hidden {
        v = h.dense.apply(&v);
        min = v.iter().fold(min, |m, z| m.min(z.abs()));
        for e in &mut v {
            *e = Activation::<f64>::Relu.apply(*e);
        }
        // Inference-mode stand-in for the batch statistics.
        if let Some(bn) = &h.batch_norm {
            bn.infer_vec(&mut v);
        }
    }
    min
}

fn avoid_kinks(net: &Network<f64>, batch: &Matrix<f64>) -> (Matrix<f64>, usize) {
    let mut out = batch.clone();
    let mut perturbed = 0;
    for r in 0..out.rows() {
        if min_abs_preactivation(net, out.row(r)) >= KINK_MARGIN {
            continue;
        }
        perturbed += 1;
        let base = out.row(r).to_vec();
        for attempt in 1..=64u32 {
            let shift = 0.01 * attempt as f64;
            let candidate: Vec<f64> = base
                .iter()
                .enumerate()
                .map(|(j, &x)| x + shift * (((j as u32 * 7 + attempt) % 5) as f64 - 2.0))
                .collect();
            if min_abs_preactivation(net, &candidate) >= KINK_MARGIN {
                out.row_mut(r).copy_from_slice(&candidate);
                break;
            }
        }
    }
    (out, perturbed)
}
