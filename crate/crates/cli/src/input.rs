use std::fs::File;
use std::path::{Path, PathBuf};

use anyhow::Context;
use nntopo::advisor::{GridSpec, ProfileConfig};
use nntopo::data::{load_mnist_dir, read_labelled_points, Split};
use nntopo::mlp::{Activation, TrainConfig};
use nntopo::Dataset;

use crate::args::{ActKind, DataArgs, NetArgs, ProfileArgs};
use crate::{usage, Failure};

pub fn require_exists(path: &Path, what: &str) -> Result<(), Failure> {
    if path.exists() {
        Ok(())
    } else {
        Err(usage(format!("{what} {} does not exist", path.display())))
    }
}

fn load(path: &Path, split: Split, limit: Option<usize>) -> anyhow::Result<Dataset> {
    if path.is_dir() {
        return load_mnist_dir(path, split, limit).with_context(|| format!("loading {}", path.display()));
    }
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let points = read_labelled_points(file, true).with_context(|| format!("reading {}", path.display()))?;
    let mut data = points.into_dataset().with_context(|| format!("reading {}", path.display()))?;
    if let Some(n) = limit.filter(|&n| n < data.len()) {
        data = data.subset(&(0..n).collect::<Vec<_>>());
    }
    Ok(data)
}

/// Input paths resolved and checked before any work starts.
pub struct DataPaths {
    train: PathBuf,
    test: Option<PathBuf>,
    limit: Option<usize>,
    test_limit: Option<usize>,
}

impl DataPaths {
    pub fn validate(args: &DataArgs) -> Result<Self, Failure> {
        require_exists(&args.data, "data path")?;
        if let Some(t) = &args.test {
            require_exists(t, "test path")?;
        }
        if args.limit == Some(0) || args.test_limit == Some(0) {
            return Err(usage("--limit and --test-limit must be positive"));
        }
        Ok(Self {
            train: args.data.clone(),
            test: args.test.clone(),
            limit: args.limit,
            test_limit: args.test_limit,
        })
    }

    pub fn train(&self) -> anyhow::Result<Dataset> {
        load(&self.train, Split::Train, self.limit)
    }

    /// The explicit test set, else the t10k split of an IDX directory, else `None`.
    pub fn test(&self) -> anyhow::Result<Option<Dataset>> {
        match &self.test {
            Some(p) => load(p, Split::Test, self.test_limit).map(Some),
            None if self.train.is_dir() => load(&self.train, Split::Test, self.test_limit).map(Some),
            None => Ok(None),
        }
    }
}

pub fn activation(kind: ActKind, degree: usize) -> Result<Activation<f64>, Failure> {
    match kind {
        ActKind::Relu => Ok(Activation::Relu),
        ActKind::Poly if degree == 0 => Err(usage("--degree must be at least 1")),
        ActKind::Poly => {
            let mut coeffs = vec![0.0; degree + 1];
            coeffs[degree] = 1.0;
            Ok(Activation::Polynomial(coeffs))
        }
    }
}

pub fn train_config(net: &NetArgs, seed: u64) -> Result<TrainConfig, Failure> {
    if net.epochs == 0 || net.batch_size == 0 {
        return Err(usage("--epochs and --batch-size must be positive"));
    }
    if !(net.lr.is_finite() && net.lr > 0.0) {
        return Err(usage("--lr must be a positive number"));
    }
    if !(0.0..1.0).contains(&net.momentum) {
        return Err(usage("--momentum must lie in [0, 1)"));
    }
    Ok(TrainConfig {
        epochs: net.epochs,
        learning_rate: net.lr,
        batch_size: net.batch_size,
        seed,
        momentum: net.momentum,
    })
}

pub fn profile_config(p: &ProfileArgs, seed: u64) -> Result<ProfileConfig, Failure> {
    if p.cap < 2 {
        return Err(usage("--cap must be at least 2"));
    }
    if !(p.grid_min.is_finite() && p.grid_min > 0.0) || p.grid_points < 2 {
        return Err(usage("--grid-min must be positive and --grid-points at least 2"));
    }
    Ok(ProfileConfig {
        cap: p.cap,
        grid: GridSpec::Log {
            min: p.grid_min,
            points: p.grid_points,
        },
        seed,
    })
}
