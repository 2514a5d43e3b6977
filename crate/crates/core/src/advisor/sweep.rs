use super::profile::{layer_profile, ClassProfile, ProfileConfig};
use super::{AdvisorError, Result};
use crate::homology::svg::line_chart_svg;
use crate::mlp::{accuracy, train_sgd, Activation, Dataset, Network, TrainConfig, TrainingLog};

/// Equal-width architecture and training settings for a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub hidden_layers: usize,
    pub activation: Activation<f64>,
    pub batch_norm: bool,
    /// `seed` is overridden per run.
    pub train: TrainConfig,
    pub profile: ProfileConfig,
    /// Hidden layer whose representations are profiled.
    pub layer: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            hidden_layers: 3,
            activation: Activation::Relu,
            batch_norm: true,
            train: TrainConfig {
                epochs: 5,
                ..TrainConfig::default()
            },
            profile: ProfileConfig::default(),
            layer: 3,
        }
    }
}

/// Outcome of one `(width, seed)` run.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRun {
    pub width: usize,
    pub seed: u64,
    pub outcome: std::result::Result<RunOutcome, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub test_accuracy: f64,
    pub max_b0_min_radius: usize,
    pub profile: ClassProfile,
    pub log: TrainingLog,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub runs: Vec<SweepRun>,
}

impl SweepResult {
    fn completed(&self) -> impl Iterator<Item = (usize, &RunOutcome)> {
        self.runs.iter().filter_map(|r| r.outcome.as_ref().ok().map(|o| (r.width, o)))
    }

    /// Lines `width,seed,accuracy,max_b0_min_radius`, failed runs as `#` comments.
    pub fn to_records(&self) -> String {
        let mut out = String::from("width,seed,accuracy,max_b0_min_radius\n");
        for r in &self.runs {
            match &r.outcome {
                Ok(o) => out.push_str(&format!(
                    "{},{},{},{}\n",
                    r.width, r.seed, o.test_accuracy, o.max_b0_min_radius
                )),
                Err(e) => out.push_str(&format!("# width {} seed {} failed: {e}\n", r.width, r.seed)),
            }
        }
        out
    }

    /// Spearman correlation of width against test accuracy over completed runs.
    pub fn accuracy_correlation(&self) -> Option<f64> {
        let (w, a): (Vec<f64>, Vec<f64>) = self.completed().map(|(w, o)| (w as f64, o.test_accuracy)).unzip();
        spearman(&w, &a)
    }

    /// Spearman correlation of width against the maximum `b_0` at the smallest radius.
    pub fn b0_correlation(&self) -> Option<f64> {
        let (w, b): (Vec<f64>, Vec<f64>) = self
            .completed()
            .map(|(w, o)| (w as f64, o.max_b0_min_radius as f64))
            .unzip();
        spearman(&w, &b)
    }

    /// Per width: median test accuracy and median max `b_0` over completed seeds.
    pub fn medians(&self) -> Vec<(usize, f64, f64)> {
        let mut widths: Vec<usize> = self.runs.iter().map(|r| r.width).collect();
        widths.dedup();
        widths
            .into_iter()
            .filter_map(|w| {
                let (acc, b0): (Vec<f64>, Vec<f64>) = self
                    .completed()
                    .filter(|(rw, _)| *rw == w)
                    .map(|(_, o)| (o.test_accuracy, o.max_b0_min_radius as f64))
                    .unzip();
                Some((w, median(&acc)?, median(&b0)?))
            })
            .collect()
    }

    pub fn summary(&self) -> String {
        let mut out = String::from("width,median_accuracy,median_max_b0_min_radius\n");
        for (w, a, b) in self.medians() {
            out.push_str(&format!("{w},{a},{b}\n"));
        }
        let fmt = |x: Option<f64>| x.map_or("undefined".to_string(), |v| format!("{v:.4}"));
        out.push_str(&format!("spearman(width, accuracy) = {}\n", fmt(self.accuracy_correlation())));
        out.push_str(&format!("spearman(width, max b0) = {}\n", fmt(self.b0_correlation())));
        out
    }

    /// Median accuracy and median max `b_0` (scaled to `[0, 1]` by its largest value) over `log2 width`.
    pub fn svg(&self) -> String {
        let m = self.medians();
        let top = m.iter().map(|x| x.2).fold(0.0, f64::max).max(1.0);
        let acc = m.iter().map(|&(w, a, _)| ((w as f64).log2(), a)).collect();
        let b0 = m.iter().map(|&(w, _, b)| ((w as f64).log2(), b / top)).collect();
        line_chart_svg(
            "width sweep",
            "log2 width",
            &[("accuracy", "black", acc), ("max b0 (scaled)", "red", b0)],
        )
    }
}

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) })
}

fn ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation with average ranks for ties; `None` when either
/// series is constant or the lengths differ.
pub fn spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let (rx, ry) = (ranks(x), ranks(y));
    let n = rx.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    (sxx > 0.0 && syy > 0.0).then(|| sxy / (sxx * syy).sqrt())
}

/// Trains an equal-width network per `(width, seed)`, evaluates test accuracy and
/// profiles the configured layer on the training data. A failed run is recorded
/// and the sweep continues.
pub fn width_sweep(
    widths: &[usize],
    seeds: &[u64],
    train: &Dataset<f64>,
    test: &Dataset<f64>,
    config: &SweepConfig,
    mut on_run: impl FnMut(&SweepRun),
) -> Result<SweepResult> {
    if widths.is_empty() || seeds.is_empty() {
        return Err(AdvisorError::EmptySweep);
    }
    if widths.windows(2).any(|w| w[0] >= w[1]) || widths[0] == 0 {
        return Err(AdvisorError::WidthsNotIncreasing(widths.to_vec()));
    }
    if config.layer == 0 || config.layer > config.hidden_layers {
        return Err(AdvisorError::Mlp(crate::mlp::MlpError::LayerOutOfRange {
            layer: config.layer,
            min: 1,
            max: config.hidden_layers,
        }));
    }
    let classes = train.classes().max(test.classes());
    let mut runs = Vec::new();
    for &width in widths {
        for &seed in seeds {
            let mut arch = vec![train.feature_dim()];
            arch.extend(std::iter::repeat_n(width, config.hidden_layers));
            arch.push(classes);
            let outcome = (|| -> Result<RunOutcome> {
                let mut net = Network::random(&arch, config.activation.clone(), config.batch_norm, seed)?;
                let train_cfg = TrainConfig {
                    seed,
                    ..config.train.clone()
                };
                let log = train_sgd(&mut net, train, &train_cfg)?;
                let test_accuracy = accuracy(&net, test)?;
                let profile = layer_profile(&net, train, config.layer, &config.profile)?;
                Ok(RunOutcome {
                    test_accuracy,
                    max_b0_min_radius: profile.max_b0_at_min_radius(),
                    profile,
                    log,
                })
            })()
            .map_err(|e| e.to_string());
            let run = SweepRun { width, seed, outcome };
            on_run(&run);
            runs.push(run);
        }
    }
    Ok(SweepResult { runs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlp::Matrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn spearman_reference_values() {
        assert_eq!(spearman(&[1.0, 2.0, 3.0], &[10.0, 20.0, 30.0]), Some(1.0));
        assert_eq!(spearman(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]), Some(-1.0));
        assert_eq!(spearman(&[1.0, 2.0, 3.0], &[5.0, 5.0, 5.0]), None);
        // Ties: ranks (1.5, 1.5, 3) against (1, 2, 3).
        let r = spearman(&[1.0, 1.0, 2.0], &[1.0, 2.0, 3.0]).unwrap();
        assert!((r - 0.866_025_403_784_438_6).abs() < 1e-12);
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0]), Some(2.5));
        assert_eq!(median(&[]), None);
    }

    fn toy(n: usize, seed: u64) -> Dataset<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let c = (i % 2) as f64 * 4.0 - 2.0;
                vec![c + rng.gen_range(-1.0..1.0), c + rng.gen_range(-1.0..1.0), rng.gen_range(0.0..1.0)]
            })
            .collect();
        Dataset::new(Matrix::from_rows(&rows), (0..n).map(|i| i % 2).collect(), 2).unwrap()
    }

    #[test]
    fn sweep_is_deterministic_and_complete() {
        let config = SweepConfig {
            profile: ProfileConfig {
                cap: 20,
                ..ProfileConfig::default()
            },
            ..SweepConfig::default()
        };
        let (train, test) = (toy(60, 1), toy(30, 2));
        let mut seen = 0;
        let a = width_sweep(&[1, 4], &[1, 2], &train, &test, &config, |_| seen += 1).unwrap();
        assert_eq!(seen, 4);
        assert_eq!(a.runs.len(), 4);
        assert!(a.runs.iter().all(|r| r.outcome.is_ok()));
        assert_eq!(a.to_records().lines().count(), 5);
        let b = width_sweep(&[1, 4], &[1, 2], &train, &test, &config, |_| {}).unwrap();
        assert_eq!(a, b);
        assert!(a.svg().starts_with("<svg"));
    }

    #[test]
    fn sweep_validation() {
        let d = toy(10, 0);
        let c = SweepConfig::default();
        assert!(matches!(width_sweep(&[], &[1], &d, &d, &c, |_| {}), Err(AdvisorError::EmptySweep)));
        assert!(matches!(
            width_sweep(&[4, 4], &[1], &d, &d, &c, |_| {}),
            Err(AdvisorError::WidthsNotIncreasing(_))
        ));
    }
}
