use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cover::validate_alphas;
use super::{Result, SemialgebraicError};
use crate::mlp::{Activation, Matrix, Network};

/// Smallest singular value accepted for a pivot block.
pub const RANK_TOLERANCE: f64 = 1e-8;

/// Affine parameterisation `X^k = offset + basis · z` of one layer's variables.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerSolve {
    pub layer: usize,
    /// Coordinates of `X^k` fixed by the layer's equation system.
    pub pivots: Vec<usize>,
    /// Coordinates of `X^k` that become new free variables.
    pub free: Vec<usize>,
    pub offset: Vec<f64>,
    /// `n_k × free_dim`.
    pub basis: Matrix<f64>,
    /// Smallest singular value of the pivot block that was inverted.
    pub smallest_singular_value: f64,
}

impl LayerSolve {
    pub fn point(&self, z: &[f64]) -> Vec<f64> {
        let mut x = self.basis.apply(z);
        for (v, &o) in x.iter_mut().zip(&self.offset) {
            *v += o;
        }
        x
    }
}

/// Explicit solution of the linear systems describing the class-`j` boundary piece
/// tied with `alphas`, pulled back from the logits to layer `layer` inside the
/// region where every ReLU from `layer` upwards acts as the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSolution {
    pub class: usize,
    pub alphas: Vec<usize>,
    pub layer: usize,
    pub free_dim: usize,
    /// Per-layer records from `l - 1` down to `layer`.
    pub layers: Vec<LayerSolve>,
    /// Residual system `inequalities · z + inequality_offset >= 0`: positivity of
    /// every solved layer followed by dominance of logit `j` over the other classes.
    pub inequalities: Matrix<f64>,
    pub inequality_offset: Vec<f64>,
    pub positivity_rows: usize,
    /// Equality systems `A X^k = c + D z` per record, kept for residual checks.
    systems: Vec<(DMatrix<f64>, DMatrix<f64>, DMatrix<f64>)>,
}

/// A sampled point on a boundary piece.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPoint {
    pub layer: usize,
    pub coords: Vec<f64>,
    pub class: usize,
    pub alphas: Vec<usize>,
}

impl AffineSolution {
    /// Layer-`self.layer` coordinates for the free-variable assignment `z`.
    pub fn point(&self, z: &[f64]) -> Vec<f64> {
        self.layers.last().expect("at least one layer").point(z)
    }

    /// Slack of every residual inequality at `z`.
    pub fn slacks(&self, z: &[f64]) -> Vec<f64> {
        let mut s = self.inequalities.apply(z);
        for (v, &o) in s.iter_mut().zip(&self.inequality_offset) {
            *v += o;
        }
        s
    }

    /// Max absolute residual of every layer's equality system at `z`.
    pub fn equality_residual(&self, z: &[f64]) -> f64 {
        let zv = DMatrix::from_column_slice(z.len(), 1, z);
        self.layers
            .iter()
            .zip(&self.systems)
            .map(|(rec, (a, c, d))| {
                let x = DMatrix::from_column_slice(rec.offset.len(), 1, &rec.point(z));
                let r = a * x - c - d * &zv;
                r.amax()
            })
            .fold(0.0, f64::max)
    }

    pub fn equation_count(&self) -> usize {
        self.alphas.len()
    }
}

/// Chooses `a.nrows()` columns by Gaussian elimination with pivoting on the
/// largest remaining entry of each row.
fn select_pivots(a: &DMatrix<f64>) -> Option<Vec<usize>> {
    let (m, n) = a.shape();
    if m > n {
        return None;
    }
    let mut work = a.clone();
    let mut used = vec![false; n];
    let mut pivots = Vec::with_capacity(m);
    for r in 0..m {
        let (col, val) = (0..n)
            .filter(|&c| !used[c])
            .map(|c| (c, work[(r, c)].abs()))
            .fold((usize::MAX, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if col == usize::MAX || val == 0.0 {
            return None;
        }
        used[col] = true;
        pivots.push(col);
        let p = work[(r, col)];
        for below in r + 1..m {
            let f = work[(below, col)] / p;
            if f != 0.0 {
                for c in 0..n {
                    let v = work[(r, c)];
                    work[(below, c)] -= f * v;
                }
            }
        }
    }
    Some(pivots)
}

fn to_dmatrix(m: &Matrix<f64>) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice())
}

fn from_dmatrix(m: &DMatrix<f64>) -> Matrix<f64> {
    let mut out = Matrix::zeros(m.nrows(), m.ncols());
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            out.set(r, c, m[(r, c)]);
        }
    }
    out
}

/// Solves `A X = c + D z` for `X`, fixing `a.nrows()` pivot coordinates and
/// making the rest new free variables starting at `next_free`.
fn solve_layer(
    layer: usize,
    weight_layer: usize,
    a: &DMatrix<f64>,
    c: &DMatrix<f64>,
    d: &DMatrix<f64>,
    next_free: &mut usize,
) -> Result<LayerSolve> {
    let (m, n) = a.shape();
    let free_dim = d.ncols();
    let rank_error = |s| SemialgebraicError::RankDeficient {
        layer: weight_layer,
        smallest_singular_value: s,
    };
    let pivots = select_pivots(a).ok_or_else(|| rank_error(0.0))?;
    let block = a.select_columns(&pivots);
    let smallest = block
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if smallest.is_nan() || smallest < RANK_TOLERANCE {
        return Err(rank_error(smallest));
    }
    let lu = block.lu();
    let free: Vec<usize> = (0..n).filter(|col| !pivots.contains(col)).collect();
    let mut e = DMatrix::zeros(free.len(), free_dim);
    for (row, _) in free.iter().enumerate() {
        e[(row, *next_free + row)] = 1.0;
    }
    *next_free += free.len();
    let a_free = a.select_columns(&free);
    let rhs_basis = d - &a_free * &e;
    let pivot_offset = lu.solve(c).ok_or_else(|| rank_error(smallest))?;
    let pivot_basis = lu.solve(&rhs_basis).ok_or_else(|| rank_error(smallest))?;
    let mut offset = vec![0.0; n];
    let mut basis = DMatrix::zeros(n, free_dim);
    for (row, &col) in pivots.iter().enumerate() {
        offset[col] = pivot_offset[(row, 0)];
        basis.set_row(col, &pivot_basis.row(row));
    }
    for (row, &col) in free.iter().enumerate() {
        basis.set_row(col, &e.row(row));
    }
    debug_assert_eq!(m, pivots.len());
    Ok(LayerSolve {
        layer,
        pivots,
        free,
        offset,
        basis: from_dmatrix(&basis),
        smallest_singular_value: smallest,
    })
}

/// Parameterises the boundary piece of class `j` tied with `alphas` on layer `layer`.
///
/// The top system `W̃ X^{l-1} + B̃ = 0` uses rows `w^l_j - w^l_α` and entries
/// `b^l_j - b^l_α`; each lower layer then solves `W^{k+1} X^k = X^{k+1} - B^{k+1}`.
/// Batch normalisation is folded into the affine maps first.
pub fn relu_cover_solve(net: &Network<f64>, j: usize, alphas: &[usize], layer: usize) -> Result<AffineSolution> {
    if !matches!(net.activation, Activation::Relu) {
        return Err(SemialgebraicError::NotRelu);
    }
    let l = net.depth();
    let n = net.classes();
    validate_alphas(n, j, alphas)?;
    if layer >= l {
        return Err(SemialgebraicError::LayerOutOfRange { layer, max: l - 1 });
    }
    let mut alphas = alphas.to_vec();
    alphas.sort_unstable();
    let net = net.fold_batch_norm();
    let widths = net.widths();
    let eqs = alphas.len();
    let mut free_dim = 0usize;
    let mut rows = eqs;
    for k in (layer..l).rev() {
        if widths[k] < rows {
            return Err(SemialgebraicError::RankDeficient {
                layer: k + 1,
                smallest_singular_value: 0.0,
            });
        }
        free_dim += widths[k] - rows;
        rows = widths[k];
    }

    let out = net.dense(l);
    let top_a = DMatrix::from_fn(eqs, widths[l - 1], |r, c| {
        out.weight.get(j, c) - out.weight.get(alphas[r], c)
    });
    let top_c = DMatrix::from_fn(eqs, 1, |r, _| -(out.bias[j] - out.bias[alphas[r]]));
    let mut system = (top_a, top_c, DMatrix::zeros(eqs, free_dim));
    let mut next_free = 0usize;
    let mut layers = Vec::new();
    let mut systems = Vec::new();
    for k in (layer..l).rev() {
        let (a, c, d) = &system;
        let rec = solve_layer(k, k + 1, a, c, d, &mut next_free)?;
        if k > layer {
            let w = net.dense(k);
            let a = to_dmatrix(&w.weight);
            let c = DMatrix::from_fn(widths[k], 1, |r, _| rec.offset[r] - w.bias[r]);
            let d = to_dmatrix(&rec.basis);
            systems.push(std::mem::replace(&mut system, (a, c, d)));
        } else {
            systems.push(system.clone());
        }
        layers.push(rec);
    }
    debug_assert_eq!(next_free, free_dim);

    let mut ineq_rows: Vec<Vec<f64>> = Vec::new();
    let mut ineq_offset = Vec::new();
    for rec in &layers {
        for r in 0..rec.offset.len() {
            ineq_rows.push(rec.basis.row(r).to_vec());
            ineq_offset.push(rec.offset[r]);
        }
    }
    let positivity_rows = ineq_rows.len();
    let top = &layers[0];
    for q in (0..n).filter(|q| *q != j && !alphas.contains(q)) {
        let diff: Vec<f64> = (0..widths[l - 1])
            .map(|c| out.weight.get(j, c) - out.weight.get(q, c))
            .collect();
        let row = (0..free_dim)
            .map(|f| (0..diff.len()).map(|c| diff[c] * top.basis.get(c, f)).sum())
            .collect();
        let off = diff.iter().zip(&top.offset).map(|(a, b)| a * b).sum::<f64>() + out.bias[j] - out.bias[q];
        ineq_rows.push(row);
        ineq_offset.push(off);
    }
    let inequalities = if ineq_rows.is_empty() {
        Matrix::zeros(0, free_dim)
    } else {
        Matrix::from_vec(ineq_rows.len(), free_dim, ineq_rows.concat())
    };
    Ok(AffineSolution {
        class: j,
        alphas,
        layer,
        free_dim,
        layers,
        inequalities,
        inequality_offset: ineq_offset,
        positivity_rows,
        systems,
    })
}

/// Rejection-sampling settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleConfig {
    pub count: usize,
    /// Free variables are drawn uniformly from `[0, box_size]`.
    pub box_size: f64,
    pub seed: u64,
    pub max_attempts: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            count: 20,
            box_size: 1.0,
            seed: 0,
            max_attempts: 200_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleReport {
    pub points: Vec<BoundaryPoint>,
    pub attempts: usize,
}

impl SampleReport {
    /// No feasible point was found within the attempt budget; the region may be empty.
    pub fn is_infeasible(&self) -> bool {
        self.points.is_empty()
    }
}

/// Draws free-variable assignments and keeps those satisfying every residual
/// inequality. A solution without free variables yields at most one point.
pub fn sample_boundary(sol: &AffineSolution, config: &SampleConfig) -> SampleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let make = |z: &[f64]| BoundaryPoint {
        layer: sol.layer,
        coords: sol.point(z),
        class: sol.class,
        alphas: sol.alphas.clone(),
    };
    let feasible = |z: &[f64]| sol.slacks(z).iter().all(|&s| s >= 0.0);
    if sol.free_dim == 0 {
        let points = if config.count > 0 && feasible(&[]) {
            vec![make(&[])]
        } else {
            Vec::new()
        };
        return SampleReport { points, attempts: 1 };
    }
    let mut points = Vec::new();
    let mut attempts = 0;
    let mut z = vec![0.0; sol.free_dim];
    while points.len() < config.count && attempts < config.max_attempts {
        attempts += 1;
        for v in &mut z {
            *v = rng.gen::<f64>() * config.box_size;
        }
        if feasible(&z) {
            points.push(make(&z));
        }
    }
    SampleReport { points, attempts }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmbiguityCheck {
    pub passed: bool,
    /// Largest violation divided by `max |logit|` (or 1 when all logits vanish).
    pub worst_margin: f64,
}

/// Forward-evaluates `point` from its layer and checks that logit `j` ties with
/// every `α` and is not beaten by any other logit, relative to `max |logit|`.
pub fn verify_ambiguity(net: &Network<f64>, point: &BoundaryPoint, tol: f64) -> AmbiguityCheck {
    let logits = net.logits_from(point.layer, &point.coords);
    let scale = logits.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let scale = if scale > 0.0 { scale } else { 1.0 };
    let lj = logits[point.class];
    let mut worst = 0.0f64;
    for (q, &lq) in logits.iter().enumerate() {
        if q == point.class {
            continue;
        }
        let violation = if point.alphas.contains(&q) {
            (lj - lq).abs()
        } else {
            (lq - lj).max(0.0)
        };
        worst = worst.max(violation / scale);
    }
    AmbiguityCheck {
        passed: worst <= tol,
        worst_margin: worst,
    }
}
