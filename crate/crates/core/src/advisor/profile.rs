use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{AdvisorError, Result};
use crate::homology::{betti_at, build_rips, compute_persistence, pairwise_distances, PointCloud};
use crate::mlp::{extract_class_activations, Dataset, Network};

/// Radius grid used to sample Betti curves.
#[derive(Debug, Clone, PartialEq)]
pub enum GridSpec {
    /// `points` log-spaced radii from `min` to the cloud's maximum pairwise distance.
    Log { min: f64, points: usize },
    /// A fixed ascending list of positive radii.
    Fixed(Vec<f64>),
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec::Log { min: 1e-3, points: 64 }
    }
}

impl GridSpec {
    /// Concrete radii for a cloud whose diameter is `max_distance`.
    pub fn radii(&self, max_distance: f64) -> Vec<f64> {
        match self {
            GridSpec::Fixed(r) => r.clone(),
            GridSpec::Log { min, points } => log_grid(*min, max_distance.max(*min), *points),
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self {
            GridSpec::Log { min, points } => *min > 0.0 && min.is_finite() && *points >= 1,
            GridSpec::Fixed(r) => {
                !r.is_empty() && r.iter().all(|x| x.is_finite() && *x > 0.0) && r.windows(2).all(|w| w[0] < w[1])
            }
        };
        if ok {
            Ok(())
        } else {
            Err(AdvisorError::InvalidGrid)
        }
    }
}

/// `points` log-spaced values from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 || hi <= lo {
        return vec![lo; points.min(1)];
    }
    let (a, b) = (lo.ln(), hi.ln());
    let mut grid: Vec<f64> = (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
        .collect();
    grid[0] = lo;
    grid[points - 1] = hi;
    grid
}

/// Settings shared by input and layer profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileConfig {
    /// Maximum points sampled per class.
    pub cap: usize,
    pub grid: GridSpec,
    pub seed: u64,
}

impl Default for ProfileConfig {
    fn default() -> Self {
        Self {
            cap: 200,
            grid: GridSpec::default(),
            seed: 0,
        }
    }
}

impl ProfileConfig {
    /// Sampling seed for `class`; input and layer profiles with the same config
    /// therefore see the same data points.
    pub fn class_seed(&self, class: usize) -> u64 {
        self.seed.wrapping_add(class as u64)
    }
}

/// Betti curves of one class.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassCurve {
    pub class: usize,
    pub points: usize,
    pub grid: Vec<f64>,
    pub b0: Vec<usize>,
    pub b1: Vec<usize>,
    /// `b_0` at the smallest grid radius.
    pub b0_at_min_radius: usize,
}

/// Per-class Betti curves, keyed by class id.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClassProfile {
    pub classes: BTreeMap<usize, ClassCurve>,
    pub cap: usize,
    pub warnings: Vec<String>,
}

impl ClassProfile {
    pub fn max_b0_at_min_radius(&self) -> usize {
        self.classes.values().map(|c| c.b0_at_min_radius).max().unwrap_or(0)
    }

    pub fn get(&self, class: usize) -> Option<&ClassCurve> {
        self.classes.get(&class)
    }

    /// CSV with header `class,radius,b0,b1`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("class,radius,b0,b1\n");
        for c in self.classes.values() {
            for ((r, b0), b1) in c.grid.iter().zip(&c.b0).zip(&c.b1) {
                out.push_str(&format!("{},{},{},{}\n", c.class, r, b0, b1));
            }
        }
        out
    }

    /// `b_0` curves over `log10(radius)`, one series per class.
    pub fn b0_svg(&self, title: &str) -> String {
        const PALETTE: [&str; 10] = [
            "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
        ];
        let labels: Vec<String> = self.classes.keys().map(|c| format!("class {c}")).collect();
        let series: Vec<crate::homology::svg::Series<'_>> = self
            .classes
            .values()
            .zip(&labels)
            .map(|(c, label)| {
                let pts = c.grid.iter().zip(&c.b0).map(|(r, b)| (r.log10(), *b as f64)).collect();
                (label.as_str(), PALETTE[c.class % PALETTE.len()], pts)
            })
            .collect();
        crate::homology::svg::line_chart_svg(title, "log10 radius", &series)
    }
}

/// Betti curves of a single cloud (dimensions 0 and 1).
pub fn cloud_curve(class: usize, cloud: &PointCloud<f64>, grid: &GridSpec) -> Result<ClassCurve> {
    let dist = pairwise_distances(cloud);
    let radii = grid.radii(dist.max_distance());
    let top = radii.last().copied().unwrap_or(1.0).max(dist.max_distance()).max(f64::MIN_POSITIVE);
    let filtration = build_rips(&dist, 1, top)?;
    let barcode = compute_persistence(&filtration);
    let b0: Vec<usize> = radii.iter().map(|&r| betti_at(&barcode, 0, r)).collect();
    let b1 = radii.iter().map(|&r| betti_at(&barcode, 1, r)).collect();
    Ok(ClassCurve {
        class,
        points: cloud.len(),
        b0_at_min_radius: b0.first().copied().unwrap_or(0),
        grid: radii,
        b0,
        b1,
    })
}

fn profile_from(
    classes: usize,
    config: &ProfileConfig,
    cloud_for: impl Fn(usize, &[usize]) -> Result<PointCloud<f64>> + Sync,
    data: &Dataset<f64>,
) -> Result<ClassProfile> {
    if config.cap < 2 {
        return Err(AdvisorError::CapTooSmall(config.cap));
    }
    config.grid.validate()?;
    let results: Vec<(usize, Result<Option<ClassCurve>>)> = (0..classes)
        .into_par_iter()
        .map(|class| {
            let outcome = (|| {
                let indices = match data.sample_class(class, config.cap, config.class_seed(class)) {
                    Ok(ix) if ix.len() >= 2 => ix,
                    _ => return Ok(None),
                };
                let cloud = cloud_for(class, &indices)?;
                cloud_curve(class, &cloud, &config.grid).map(Some)
            })();
            (class, outcome)
        })
        .collect();
    let mut profile = ClassProfile {
        cap: config.cap,
        ..ClassProfile::default()
    };
    for (class, outcome) in results {
        match outcome? {
            Some(curve) => {
                profile.classes.insert(class, curve);
            }
            None => profile
                .warnings
                .push(format!("class {class} has fewer than 2 points; skipped")),
        }
    }
    Ok(profile)
}

/// Betti curves of each class's raw feature vectors.
pub fn input_profile(data: &Dataset<f64>, config: &ProfileConfig) -> Result<ClassProfile> {
    profile_from(
        data.classes(),
        config,
        |_, indices| {
            let m = data.features().select_rows(indices);
            Ok(PointCloud::from_flat(m.cols(), m.as_slice().to_vec())?)
        },
        data,
    )
}

/// Betti curves of each class's hidden-layer representations (post batch norm).
pub fn layer_profile(net: &Network<f64>, data: &Dataset<f64>, layer: usize, config: &ProfileConfig) -> Result<ClassProfile> {
    if layer == 0 || layer >= net.depth() {
        return Err(crate::mlp::MlpError::LayerOutOfRange {
            layer,
            min: 1,
            max: net.depth() - 1,
        }
        .into());
    }
    profile_from(
        data.classes(),
        config,
        |class, indices| {
            let dump = extract_class_activations(net, data, layer, class, config.cap, config.class_seed(class))?;
            debug_assert_eq!(dump.indices, indices);
            Ok(dump.to_point_cloud())
        },
        data,
    )
}
