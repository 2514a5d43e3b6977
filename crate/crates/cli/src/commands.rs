use std::fmt::Write as _;
use std::fs::{self, File};
use std::path::Path;

use anyhow::{bail, Context};
use nntopo::advisor::{compare, input_profile, layer_profile, width_sweep, ClassCurve, SweepConfig, SweepResult, SweepRun};
use nntopo::bounds::{layer_bound_profile, min_width_for, Activation, ArchitectureSpec, BigCount, BoundsError, FreeWidth};
use nntopo::data::{read_labelled_points, read_points};
use nntopo::homology::svg::barcode_svg;
use nntopo::homology::{build_rips, compute_persistence_with, pairwise_distances, Reduction};
use nntopo::mlp::{accuracy, load_checkpoint, save_checkpoint, train_sgd};
use nntopo::semialgebraic::{
    cover_report_text, relu_cover_solve, verify_class_covers, verify_cover, SampleConfig, SemialgebraicError,
};
use nntopo::{Network, PointCloud};
use rayon::prelude::*;

use crate::args::{ActKind, AnalyzeArgs, BoundsArgs, CoverArgs, HomologyArgs, ReductionKind, SweepArgs, TrainArgs};
use crate::echo::write_echo;
use crate::input::{activation, profile_config, require_exists, train_config, DataPaths};
use crate::{usage, Failure, Outcome};

fn write(out: &Path, name: &str, contents: &str) -> anyhow::Result<()> {
    let path = out.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
}

fn arch_from(args: &BoundsArgs) -> Result<ArchitectureSpec, Failure> {
    let mut widths = match args.widths.as_slice() {
        [w] => {
            if args.layers == 0 {
                return Err(usage("--layers must be at least 1"));
            }
            vec![*w; args.layers]
        }
        ws => ws.to_vec(),
    };
    widths.push(args.classes);
    let act = match args.act {
        ActKind::Relu => Activation::Relu,
        ActKind::Poly => Activation::Polynomial { degree: args.degree },
    };
    ArchitectureSpec::new(widths, act).map_err(|e| usage(e.to_string()))
}

pub fn bounds(args: &BoundsArgs, echo: &str) -> Outcome {
    let arch = arch_from(args)?;
    if arch.activation() == Activation::Relu && arch.depth() < 2 {
        return Err(usage("ReLU bounds need at least two layers"));
    }
    let target = args
        .target
        .as_deref()
        .map(|t| t.parse::<BigCount>().map_err(|_| usage(format!("--target {t} is not a nonnegative integer"))))
        .transpose()?;
    let free = match args.free.as_str() {
        "all" => FreeWidth::AllHidden,
        s => FreeWidth::Layer(s.parse().map_err(|_| usage(format!("--free {s} is neither `all` nor a layer index")))?),
    };
    write_echo(&args.out, echo)?;

    let mut ks = args.k.clone();
    ks.sort_unstable();
    ks.dedup();
    let mut report = layer_bound_profile(&arch, ks[0]).map_err(|e| usage(e.to_string()))?;
    for &k in &ks[1..] {
        report.merge(layer_bound_profile(&arch, k).map_err(|e| usage(e.to_string()))?);
    }
    let mut table = report.to_table();
    if let Some(target) = target {
        let line = match min_width_for(&arch, free, args.at_layer, ks[0], &target, args.cap) {
            Ok(w) => format!("minimum width for b_{} bound >= {target} at layer {}: {w}\n", ks[0], args.at_layer),
            Err(e @ (BoundsError::Unreachable { .. } | BoundsError::NonMonotone { .. })) => {
                format!("minimum width search: {e}\n")
            }
            Err(e) => return Err(usage(e.to_string())),
        };
        table.push_str(&line);
    }
    write(&args.out, "bounds.csv", &report.to_records())?;
    write(&args.out, "bounds.txt", &table)?;
    print!("{table}");
    Ok(())
}

fn read_cloud(args: &HomologyArgs) -> anyhow::Result<PointCloud> {
    let file = File::open(&args.points).with_context(|| format!("opening {}", args.points.display()))?;
    let ctx = || format!("reading {}", args.points.display());
    if !args.label_column {
        return read_points(file).with_context(ctx);
    }
    let mut points = read_labelled_points(file, true).with_context(ctx)?;
    if let (Some(class), Some(labels)) = (args.class, &points.labels) {
        let rows = std::mem::take(&mut points.rows);
        points.rows = rows
            .into_iter()
            .zip(labels)
            .filter(|(_, &l)| l == class)
            .map(|(r, _)| r)
            .collect();
        if points.rows.is_empty() {
            bail!("no points with label {class} in {}", args.points.display());
        }
    }
    points.into_point_cloud().with_context(ctx)
}

pub fn homology(args: &HomologyArgs, echo: &str) -> Outcome {
    require_exists(&args.points, "points file")?;
    if args.class.is_some() && !args.label_column {
        return Err(usage("--class requires --label-column true"));
    }
    if args.max_dim > nntopo::homology::MAX_HOMOLOGY_DIM {
        return Err(usage(format!(
            "--max-dim must be at most {}",
            nntopo::homology::MAX_HOMOLOGY_DIM
        )));
    }
    if let Some(r) = args.max_radius {
        if !(r.is_finite() && r > 0.0) {
            return Err(usage("--max-radius must be a positive number"));
        }
    }
    write_echo(&args.out, echo)?;
    let cloud = read_cloud(args)?;
    let dist = pairwise_distances(&cloud);
    let radius = args.max_radius.unwrap_or_else(|| {
        let d = dist.max_distance();
        if d > 0.0 {
            d
        } else {
            1.0
        }
    });
    let filtration = build_rips(&dist, args.max_dim, radius)?;
    let reduction = match args.reduction {
        ReductionKind::Clearing => Reduction::Clearing,
        ReductionKind::Standard => Reduction::Standard,
    };
    let barcode = compute_persistence_with(&filtration, reduction);
    let text = barcode.to_text();
    write(&args.out, "barcode.txt", &text)?;
    let title = format!("{} points, radius up to {radius}", cloud.len());
    write(&args.out, "barcode.svg", &barcode_svg(&barcode, &title))?;
    print!("{text}");
    Ok(())
}

pub fn train(args: &TrainArgs, echo: &str) -> Outcome {
    let paths = DataPaths::validate(&args.data)?;
    let act = activation(args.net.act, args.net.degree)?;
    let config = train_config(&args.net, args.seed)?;
    if args.widths.contains(&0) {
        return Err(usage("hidden widths must be positive"));
    }
    write_echo(&args.out, echo)?;
    let data = paths.train()?;
    let test = paths.test()?;
    let mut arch = vec![data.feature_dim()];
    arch.extend(&args.widths);
    arch.push(data.classes().max(test.as_ref().map_or(0, |t| t.classes())));
    let mut net = Network::random(&arch, act, args.net.batch_norm, args.seed)?;
    let log = train_sgd(&mut net, &data, &config)?;
    save_checkpoint(&net, &args.out.join("network.ckpt"))?;
    write(&args.out, "training.csv", &log.to_csv())?;
    let mut metrics = format!(
        "architecture={}\ntrain_samples={}\ntrain_accuracy={}\n",
        arch.iter().map(usize::to_string).collect::<Vec<_>>().join(","),
        data.len(),
        accuracy(&net, &data)?
    );
    if let Some(test) = &test {
        let _ = writeln!(metrics, "test_samples={}\ntest_accuracy={}", test.len(), accuracy(&net, test)?);
    }
    write(&args.out, "metrics.txt", &metrics)?;
    print!("{metrics}");
    Ok(())
}

fn curve_csv(c: &ClassCurve) -> String {
    let mut out = String::from("radius,b0,b1\n");
    for ((r, b0), b1) in c.grid.iter().zip(&c.b0).zip(&c.b1) {
        let _ = writeln!(out, "{r},{b0},{b1}");
    }
    out
}

pub fn analyze(args: &AnalyzeArgs, echo: &str) -> Outcome {
    require_exists(&args.checkpoint, "checkpoint")?;
    let paths = DataPaths::validate(&args.data)?;
    let config = profile_config(&args.profile, args.seed)?;
    if !(args.threshold > 0.0 && args.threshold.is_finite()) {
        return Err(usage("--threshold must be positive"));
    }
    let net: Network = load_checkpoint(&args.checkpoint)?;
    if args.layer == 0 || args.layer >= net.depth() {
        return Err(usage(format!(
            "--layer must be a hidden layer in 1..={} for this checkpoint",
            net.depth() - 1
        )));
    }
    write_echo(&args.out, echo)?;
    let data = paths.train()?;
    if data.feature_dim() != net.input_dim() {
        return Err(Failure::Runtime(anyhow::anyhow!(
            "checkpoint expects {} input features, data has {}",
            net.input_dim(),
            data.feature_dim()
        )));
    }
    let input = input_profile(&data, &config)?;
    let layer = layer_profile(&net, &data, args.layer, &config)?;
    let profiles = args.out.join("profiles");
    fs::create_dir_all(&profiles).with_context(|| format!("creating {}", profiles.display()))?;
    for c in input.classes.values() {
        write(&profiles, &format!("class{}_input.csv", c.class), &curve_csv(c))?;
    }
    for c in layer.classes.values() {
        write(&profiles, &format!("class{}_layer{}.csv", c.class, args.layer), &curve_csv(c))?;
    }
    write(&args.out, "input_profile.csv", &input.to_csv())?;
    write(&args.out, &format!("layer{}_profile.csv", args.layer), &layer.to_csv())?;
    write(&args.out, "input_b0.svg", &input.b0_svg("input b0 per class"))?;
    write(
        &args.out,
        &format!("layer{}_b0.svg", args.layer),
        &layer.b0_svg(&format!("layer {} b0 per class", args.layer)),
    )?;
    let eval = match paths.test()? {
        Some(t) if t.feature_dim() == net.input_dim() => t,
        _ => data.clone(),
    };
    let mut report = compare(&input, &layer, args.threshold)?.with_accuracy(accuracy(&net, &eval)?).to_text();
    let _ = writeln!(report, "cap {} points per class", config.cap);
    for w in input.warnings.iter().chain(&layer.warnings) {
        let _ = writeln!(report, "warning: {w}");
    }
    write(&args.out, "report.txt", &report)?;
    print!("{report}");
    Ok(())
}

fn progress(run: &SweepRun) {
    match &run.outcome {
        Ok(o) => eprintln!(
            "width {} seed {}: accuracy {:.4}, max b0 {}",
            run.width, run.seed, o.test_accuracy, o.max_b0_min_radius
        ),
        Err(e) => eprintln!("width {} seed {}: failed: {e}", run.width, run.seed),
    }
}

pub fn sweep(args: &SweepArgs, jobs: usize, echo: &str) -> Outcome {
    let paths = DataPaths::validate(&args.data)?;
    let config = SweepConfig {
        hidden_layers: args.hidden_layers,
        activation: activation(args.net.act, args.net.degree)?,
        batch_norm: args.net.batch_norm,
        train: train_config(&args.net, 0)?,
        profile: profile_config(&args.profile, args.profile_seed)?,
        layer: args.layer,
    };
    if args.widths.is_empty() || args.widths[0] == 0 || args.widths.windows(2).any(|w| w[0] >= w[1]) {
        return Err(usage("--widths must be positive and strictly increasing"));
    }
    if args.layer == 0 || args.layer > args.hidden_layers {
        return Err(usage("--layer must lie in 1..=--hidden-layers"));
    }
    write_echo(&args.out, echo)?;
    let train = paths.train()?;
    let test = match paths.test()? {
        Some(t) => t,
        None => train.clone(),
    };
    let result = if jobs > 1 {
        let parts = args
            .widths
            .par_iter()
            .map(|&w| width_sweep(&[w], &args.seeds, &train, &test, &config, progress))
            .collect::<Result<Vec<_>, _>>()?;
        SweepResult {
            runs: parts.into_iter().flat_map(|p| p.runs).collect(),
        }
    } else {
        width_sweep(&args.widths, &args.seeds, &train, &test, &config, progress)?
    };
    write(&args.out, "sweep.csv", &result.to_records())?;
    write(&args.out, "summary.txt", &result.summary())?;
    write(&args.out, "sweep.svg", &result.svg())?;
    print!("{}", result.summary());
    Ok(())
}

fn cover_failure(e: SemialgebraicError) -> Failure {
    match e {
        SemialgebraicError::InvalidClass { .. }
        | SemialgebraicError::InvalidAlphas { .. }
        | SemialgebraicError::LayerOutOfRange { .. } => usage(e.to_string()),
        e => Failure::Runtime(e.into()),
    }
}

pub fn cover(args: &CoverArgs, echo: &str) -> Outcome {
    require_exists(&args.checkpoint, "checkpoint")?;
    if !(args.tol > 0.0 && args.box_size > 0.0) {
        return Err(usage("--tol and --box must be positive"));
    }
    write_echo(&args.out, echo)?;
    let net: Network = load_checkpoint(&args.checkpoint)?;
    let sampling = SampleConfig {
        count: args.samples,
        box_size: args.box_size,
        seed: args.seed,
        max_attempts: args.max_attempts,
    };
    let entries = if args.alphas.is_empty() {
        verify_class_covers(&net, args.class, args.layer, &sampling, args.tol)
    } else {
        verify_cover(&net, args.class, &args.alphas, args.layer, &sampling, args.tol).map(|e| vec![e])
    }
    .map_err(cover_failure)?;
    let mut text = String::new();
    for e in &entries {
        let sol = relu_cover_solve(&net, e.class, &e.alphas, args.layer).map_err(cover_failure)?;
        let _ = writeln!(
            text,
            "class {} alphas {:?}: {} residual inequalities",
            sol.class,
            sol.alphas,
            sol.inequalities.rows()
        );
        for l in &sol.layers {
            let _ = writeln!(
                text,
                "  layer {}: {} pivots, {} free, smallest pivot singular value {:.3e}",
                l.layer,
                l.pivots.len(),
                l.free.len(),
                l.smallest_singular_value
            );
        }
    }
    text.push_str(&cover_report_text(&entries));
    let sampled: usize = entries.iter().map(|e| e.sampled).sum();
    let passed: usize = entries.iter().map(|e| e.passed).sum();
    if sampled > 0 {
        let _ = writeln!(
            text,
            "pass rate {:.1}% ({passed}/{sampled}) at tol {:e}",
            100.0 * passed as f64 / sampled as f64,
            args.tol
        );
    } else {
        text.push_str("region empty: no feasible sample in any piece\n");
    }
    write(&args.out, "cover.txt", &text)?;
    print!("{text}");
    Ok(())
}
