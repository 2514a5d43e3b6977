//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run all criteria with `cargo test -p nntopo --test acceptance`, or a subset by
//! number, e.g. `cargo test -p nntopo --test acceptance -- 1 3 7`.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use nntopo::advisor::{
    input_profile, layer_profile, log_grid, median, width_sweep, GridSpec, ProfileConfig, SweepConfig,
};
use nntopo::bounds::{
    basu_bound, layer_bound_profile, milnor_bound, mv_union_bound, theorem1_poly_bound, theorem2_relu_bound,
    Activation as BoundActivation, ArchitectureSpec, BigCount, CoverBettiTable,
};
use nntopo::data::{load_mnist_dir, Split};
use nntopo::homology::{
    betti_at, brute_force_betti, build_rips, complex_betti, compute_persistence, pairwise_distances, Death,
    PointCloud,
};
use nntopo::mlp::{
    extract_class_activations, gradient_check, train_sgd, Activation, BatchNorm, DenseLayer, HiddenLayer, Matrix,
    Network, TrainConfig,
};
use nntopo::semialgebraic::{
    compose_network_poly, degree_bound_check, relu_cover_solve, sample_boundary, verify_ambiguity, PolyCaps,
    SampleConfig, SemialgebraicError,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "persistence oracle equivalence", persistence_oracle),
        (2, "circle recovery", circle_recovery),
        (3, "bound spot values", bound_spot_values),
        (4, "bound monotonicity", bound_monotonicity),
        (5, "Mayer-Vietoris soundness", mayer_vietoris),
        (6, "polynomial degree bound", degree_bound),
        (7, "ReLU boundary verification", relu_boundary),
        (8, "gradient check", gradient_checks),
        (9, "desk-scale MNIST trend", mnist_trend),
        (10, "layer descent", layer_descent),
    ];
    let selected: BTreeSet<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, name, run) in criteria {
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let verdict = if result.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!result.pass);
        println!(
            "criterion {id:>2} {name}: {verdict} ({:.1}s) {}",
            start.elapsed().as_secs_f64(),
            result.detail
        );
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}

fn random_cloud(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> PointCloud<f64> {
    PointCloud::new((0..n).map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect()).collect()).unwrap()
}

fn persistence_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checks = 0;
    let mut mismatches = Vec::new();
    for cloud_index in 0..200 {
        let n = rng.gen_range(1..=10);
        let dim = rng.gen_range(2..=3);
        let cloud = random_cloud(&mut rng, n, dim);
        let dist = pairwise_distances(&cloud);
        let top = dist.max_distance().max(1e-9);
        let barcode = compute_persistence(&build_rips(&dist, 1, top).unwrap());
        for _ in 0..10 {
            let radius = rng.gen::<f64>() * 1.2 * top;
            for d in 0..=1 {
                checks += 1;
                let fast = betti_at(&barcode, d, radius);
                let oracle = brute_force_betti(&dist, d, radius).unwrap();
                if fast != oracle {
                    mismatches.push((cloud_index, d, radius, fast, oracle));
                }
            }
        }
    }
    outcome(
        mismatches.is_empty(),
        format!("{checks} comparisons, {} mismatches {:?}", mismatches.len(), mismatches.first()),
    )
}

fn circle_recovery() -> Outcome {
    let rows = (0..20)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / 20.0;
            vec![t.cos(), t.sin()]
        })
        .collect();
    let cloud = PointCloud::new(rows).unwrap();
    let dist = pairwise_distances(&cloud);
    let barcode = compute_persistence(&build_rips(&dist, 1, dist.max_distance()).unwrap());
    let bars = barcode.intervals(1);
    let long: Vec<_> = bars
        .iter()
        .filter(|iv| match iv.death {
            Death::Finite(d) => d / iv.birth > 2.0,
            Death::Infinite => true,
        })
        .collect();
    if bars.len() != 1 || long.len() != 1 {
        return outcome(false, format!("{} dim-1 bars, {} with ratio > 2", bars.len(), long.len()));
    }
    let iv = long[0];
    let death = iv.death.finite().unwrap_or(dist.max_distance());
    let mid = 0.5 * (iv.birth + death);
    let b1 = betti_at(&barcode, 1, mid);
    outcome(
        b1 == 1,
        format!("bar [{:.6}, {:.6}), ratio {:.3}, b1 at midpoint {b1}", iv.birth, death, death / iv.birth),
    )
}

fn bound_spot_values() -> Outcome {
    let poly = |widths: Vec<usize>| ArchitectureSpec::new(widths, BoundActivation::Polynomial { degree: 2 }).unwrap();
    let relu = |widths: Vec<usize>| ArchitectureSpec::new(widths, BoundActivation::Relu).unwrap();
    let v = |b: nntopo::bounds::Bound| b.value.to_u64().unwrap();
    // Hand evaluations:
    //   theorem 1, n=2, r=2, l=3, i=1, n_1=2, k=0: class factor 1, m = 2, m(2m-1)^(n_1-1) = 6.
    //   theorem 2, n=2, n_1=n_2=2, l=3, k=0: 3^(n_1+n_2) - 1 = 80 at i=1, 3^(n_2) - 1 = 8 at i=2.
    //   theorem 1 at i=l-1, n=3: C(2,1)(3^1-1) = 4 for k=0, plus 1 for k>=1.
    //   basu(2 inequalities, degree 2, 3 variables): (3^2-1) * 2 * 3^2 = 144.
    //   milnor(2 variables, degree 3): 3 * 5 = 15.
    let checks = [
        ("theorem1 i=1", v(theorem1_poly_bound(&poly(vec![2, 2, 2, 2]), 0, 1).unwrap()), 6),
        ("theorem2 i=1", v(theorem2_relu_bound(&relu(vec![2, 2, 2, 2]), 0, 1).unwrap()), 80),
        ("theorem2 i=2", v(theorem2_relu_bound(&relu(vec![2, 2, 2, 2]), 0, 2).unwrap()), 8),
        ("theorem1 i=l-1 k=0", v(theorem1_poly_bound(&poly(vec![3, 3, 3, 3]), 0, 2).unwrap()), 4),
        ("theorem1 i=l-1 k=1", v(theorem1_poly_bound(&poly(vec![3, 3, 3, 3]), 1, 2).unwrap()), 5),
        ("theorem1 i=l-1 k=3", v(theorem1_poly_bound(&poly(vec![3, 3, 3, 3]), 3, 2).unwrap()), 5),
        ("basu(2,2,3)", basu_bound(2, 2, 3).unwrap().to_u64().unwrap(), 144),
        ("milnor(2,3)", milnor_bound(2, 3).unwrap().to_u64().unwrap(), 15),
    ];
    let wrong: Vec<_> = checks.iter().filter(|(_, got, want)| got != want).collect();
    outcome(wrong.is_empty(), format!("{} values checked, mismatches {wrong:?}", checks.len()))
}

fn bound_monotonicity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut layer_violations = 0;
    let mut width_violations = 0;
    for _ in 0..500 {
        let depth = rng.gen_range(2..=6);
        let width = rng.gen_range(1..=20);
        let classes = rng.gen_range(2..=10);
        let k = rng.gen_range(0..=3);
        let act = if rng.gen_bool(0.5) {
            BoundActivation::Relu
        } else {
            BoundActivation::Polynomial {
                degree: rng.gen_range(1..=4),
            }
        };
        let arch = ArchitectureSpec::uniform(width, width, depth, classes, act).unwrap();
        let wider = ArchitectureSpec::uniform(width + 1, width + 1, depth, classes, act).unwrap();
        let a = layer_bound_profile(&arch, k).unwrap();
        let b = layer_bound_profile(&wider, k).unwrap();
        let va: Vec<&BigCount> = a.values_for(k);
        let vb: Vec<&BigCount> = b.values_for(k);
        layer_violations += va.windows(2).filter(|w| w[0] < w[1]).count();
        width_violations += va.iter().zip(&vb).filter(|(x, y)| x > y).count();
    }
    outcome(
        layer_violations == 0 && width_violations == 0,
        format!("500 architectures, {layer_violations} layer violations, {width_violations} width violations"),
    )
}

type Complex = BTreeSet<Vec<usize>>;

fn closure(faces: &[Vec<usize>]) -> Complex {
    let mut out = Complex::new();
    for f in faces {
        let n = f.len();
        for mask in 1u32..(1 << n) {
            out.insert((0..n).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect());
        }
    }
    out
}

fn betti(c: &Complex, k: usize) -> u64 {
    let simplices: Vec<Vec<usize>> = c.iter().cloned().collect();
    complex_betti(&simplices).unwrap().get(k).copied().unwrap_or(0) as u64
}

fn mayer_vietoris() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut union_violations = 0;
    let mut lemma_violations = [0usize; 3];
    let mut corrected_violations = 0;
    let mut pair_checks = 0;
    for _ in 0..100 {
        let vertices = rng.gen_range(4..=8);
        let faces: Vec<Vec<usize>> = (0..rng.gen_range(3..=9))
            .map(|_| {
                let size = rng.gen_range(1..=3);
                let mut f: Vec<usize> = rand::seq::index::sample(&mut rng, vertices, size).into_vec();
                f.sort_unstable();
                f
            })
            .collect();
        let parts = rng.gen_range(2..=3);
        let mut groups: Vec<Vec<Vec<usize>>> = vec![Vec::new(); parts];
        for (i, f) in faces.iter().enumerate() {
            let g = if i < parts { i } else { rng.gen_range(0..parts) };
            groups[g].push(f.clone());
            if rng.gen_bool(0.3) {
                groups[rng.gen_range(0..parts)].push(f.clone());
            }
        }
        let covers: Vec<Complex> = groups.iter().map(|g| closure(g)).collect();
        let union: Complex = covers.iter().flatten().cloned().collect();
        let mut table = CoverBettiTable::new(parts);
        for mask in 1u32..(1 << parts) {
            let members: Vec<usize> = (0..parts).filter(|i| mask & (1 << i) != 0).collect();
            let inter: Complex = covers[members[0]]
                .iter()
                .filter(|s| members.iter().all(|&m| covers[m].contains(*s)))
                .cloned()
                .collect();
            table.insert(members, vec![betti(&inter, 0), betti(&inter, 1)]);
        }
        for k in 0..=1 {
            let bound = mv_union_bound(&table, k).value.to_u64().unwrap();
            if bound < betti(&union, k) {
                union_violations += 1;
            }
        }
        for a in 0..parts {
            for b in a + 1..parts {
                let (s1, s2) = (&covers[a], &covers[b]);
                let cup: Complex = s1.union(s2).cloned().collect();
                let cap: Complex = s1.intersection(s2).cloned().collect();
                for i in 0..=1usize {
                    pair_checks += 1;
                    let bi = |c: &Complex| betti(c, i);
                    let below = |c: &Complex| if i == 0 { 0 } else { betti(c, i - 1) };
                    if bi(s1) + bi(s2) > bi(&cup) + bi(&cap) {
                        lemma_violations[0] += 1;
                    }
                    if bi(&cup) > bi(s1) + bi(s2) + below(&cap) {
                        lemma_violations[1] += 1;
                    }
                    if bi(&cap) > bi(s1) + bi(s2) + below(&cup) {
                        lemma_violations[2] += 1;
                    }
                    if bi(&cap) > bi(s1) + bi(s2) + betti(&cup, i + 1) {
                        corrected_violations += 1;
                    }
                }
            }
        }
    }
    let pass = union_violations == 0 && lemma_violations.iter().all(|&v| v == 0);
    outcome(
        pass,
        format!(
            "cover bound violations {union_violations}; two-set inequality violations {lemma_violations:?} over {pair_checks} checks; \
             intersection inequality with b_(i+1)(union) in place of b_(i-1)(union): {corrected_violations} violations"
        ),
    )
}

fn random_bn(bn: &mut BatchNorm<f64>, rng: &mut ChaCha8Rng) {
    for j in 0..bn.width() {
        bn.gamma[j] = rng.gen_range(0.5..1.5);
        bn.beta[j] = rng.gen_range(-0.5..0.5);
        bn.running_mean[j] = rng.gen_range(-0.5..0.5);
        bn.running_var[j] = rng.gen_range(0.5..2.0);
    }
}

fn randomise_biases(net: &mut Network<f64>, rng: &mut ChaCha8Rng) {
    for h in &mut net.hidden {
        h.dense.bias.iter_mut().for_each(|b| *b = rng.gen_range(-0.5..0.5));
        if let Some(bn) = &mut h.batch_norm {
            random_bn(bn, rng);
        }
    }
    net.output.bias.iter_mut().for_each(|b| *b = rng.gen_range(-0.5..0.5));
}

fn degree_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut nets = 0;
    let mut cases = 0;
    let mut degree_violations = Vec::new();
    let mut composition_violations = 0;
    let mut worst_rel = 0.0f64;
    for l in 2..=4usize {
        let hidden_choices = 3usize.pow(l as u32);
        for code in 0..hidden_choices {
            let mut widths: Vec<usize> = (0..l).map(|p| code / 3usize.pow(p as u32) % 3 + 1).collect();
            for classes in 2..=3 {
                widths.push(classes);
                nets += 1;
                let mut net = Network::random(&widths, Activation::square(), nets % 2 == 0, nets as u64).unwrap();
                randomise_biases(&mut net, &mut rng);
                for i in 0..l - 1 {
                    cases += 1;
                    let qs = compose_network_poly(&net, i, &PolyCaps::default()).unwrap();
                    let check = degree_bound_check(&qs, 2, l, i);
                    if !check.holds {
                        degree_violations.push((widths.clone(), i, check.max_degree, check.bound));
                    }
                    if check.max_degree as u64 > check.composition_bound {
                        composition_violations += 1;
                    }
                    for _ in 0..100 {
                        let x: Vec<f64> = (0..widths[i]).map(|_| rng.gen_range(-1.0..1.0)).collect();
                        let numeric = net.logits_from(i, &x);
                        for (q, f) in qs.iter().zip(&numeric) {
                            let rel = (q.evaluate(&x) - f).abs() / f.abs().max(1.0);
                            worst_rel = worst_rel.max(rel);
                        }
                    }
                }
                widths.pop();
            }
        }
    }
    let agree = worst_rel <= 1e-8;
    let mut detail = format!(
        "{nets} nets, {cases} (net, i) cases; max relative logit error {worst_rel:.2e}; \
         {} cases exceed r(l-i-1), {composition_violations} exceed r^(l-i-1)",
        degree_violations.len()
    );
    if let Some((w, i, got, bound)) = degree_violations.first() {
        detail.push_str(&format!("; first: widths {w:?}, i={i}, degree {got} > {bound}"));
    }
    outcome(agree && degree_violations.is_empty(), detail)
}

fn relu_boundary() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut verified_nets = 0;
    let mut skipped_nets = 0;
    let mut points = 0;
    let mut failures = 0;
    let mut worst = 0.0f64;
    let mut seed = 0u64;
    let sampling = SampleConfig {
        count: 20,
        max_attempts: 20_000,
        ..SampleConfig::default()
    };
    while verified_nets < 50 && seed < 10_000 {
        seed += 1;
        let n2 = rng.gen_range(3..=4);
        let n1 = rng.gen_range(n2..=4);
        let n0 = rng.gen_range(n1..=4);
        let mut net = Network::random(&[n0, n1, n2, 3], Activation::Relu, rng.gen_bool(0.5), seed).unwrap();
        randomise_biases(&mut net, &mut rng);
        let layer = (seed % 3) as usize;
        let mut pairs: Vec<(usize, Vec<usize>)> = Vec::new();
        for j in 0..3 {
            for a in 0..3 {
                if a != j {
                    pairs.push((j, vec![a]));
                }
            }
            let rest: Vec<usize> = (0..3).filter(|&a| a != j).collect();
            pairs.push((j, rest));
        }
        let mut found = false;
        for (j, alphas) in pairs {
            let sol = relu_cover_solve(&net, j, &alphas, layer).unwrap();
            let report = sample_boundary(
                &sol,
                &SampleConfig {
                    seed,
                    ..sampling.clone()
                },
            );
            if report.is_infeasible() {
                continue;
            }
            for p in &report.points {
                let check = verify_ambiguity(&net, p, 1e-6);
                points += 1;
                failures += usize::from(!check.passed);
                worst = worst.max(check.worst_margin);
            }
            found = true;
            break;
        }
        if found {
            verified_nets += 1;
        } else {
            skipped_nets += 1;
        }
    }

    let id = || DenseLayer::new(Matrix::identity(3), vec![0.0; 3]).unwrap();
    let dup_out = DenseLayer::new(
        Matrix::from_rows(&[vec![1.0, 2.0, 3.0], vec![1.0, 2.0, 3.0], vec![0.0, 1.0, 0.0]]),
        vec![0.0, 0.1, 0.2],
    )
    .unwrap();
    let degenerate_top = Network::new(vec![HiddenLayer { dense: id(), batch_norm: None }], dup_out, Activation::Relu).unwrap();
    let dup_hidden = DenseLayer::new(
        Matrix::from_rows(&[vec![1.0, -1.0, 0.5], vec![1.0, -1.0, 0.5], vec![0.0, 0.0, 1.0]]),
        vec![0.0; 3],
    )
    .unwrap();
    let degenerate_hidden =
        Network::new(vec![HiddenLayer { dense: dup_hidden, batch_norm: None }], id(), Activation::Relu).unwrap();
    let rank_top = matches!(
        relu_cover_solve(&degenerate_top, 0, &[1], 1),
        Err(SemialgebraicError::RankDeficient { layer: 2, .. })
    );
    let rank_hidden = matches!(
        relu_cover_solve(&degenerate_hidden, 0, &[1], 0),
        Err(SemialgebraicError::RankDeficient { layer: 1, .. })
    );
    outcome(
        verified_nets == 50 && failures == 0 && points > 0 && rank_top && rank_hidden,
        format!(
            "{verified_nets} nets with a feasible piece ({skipped_nets} skipped as empty), {points} points, \
             {failures} failures, worst margin {worst:.2e}; rank errors raised: top {rank_top}, hidden {rank_hidden}"
        ),
    )
}

fn gradient_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    let mut worst_abs = 0.0f64;
    let mut perturbed = 0;
    for i in 0..20u64 {
        let depth = rng.gen_range(2..=4);
        let mut widths: Vec<usize> = (0..depth).map(|_| rng.gen_range(2..=5)).collect();
        widths.push(rng.gen_range(2..=4));
        let act = if i % 2 == 0 {
            Activation::Relu
        } else if i % 4 == 1 {
            Activation::square()
        } else {
            Activation::Polynomial(vec![0.1, 0.5, 0.3, -0.2])
        };
        let mut net = Network::random(&widths, act, rng.gen_bool(0.5), i).unwrap();
        randomise_biases(&mut net, &mut rng);
        let rows = 6;
        let x = Matrix::from_vec(rows, widths[0], (0..rows * widths[0]).map(|_| rng.gen_range(-1.0..1.0)).collect());
        let y: Vec<usize> = (0..rows).map(|_| rng.gen_range(0..widths[depth])).collect();
        let check = gradient_check(&net, &x, &y, 1e-5).unwrap();
        worst = worst.max(check.max_relative_error);
        worst_abs = worst_abs.max(check.max_absolute_error);
        perturbed += check.rows_perturbed;
    }
    outcome(
        worst < 1e-4,
        format!(
            "20 nets, max relative error {worst:.2e}, max absolute error {worst_abs:.2e}, \
             {perturbed} rows nudged off ReLU kinks"
        ),
    )
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/mnist-desk")
}

fn desk_train_config() -> TrainConfig {
    TrainConfig {
        epochs: 5,
        learning_rate: 0.05,
        batch_size: 32,
        seed: 1,
        momentum: 0.9,
    }
}

fn mnist_trend() -> Outcome {
    let train = load_mnist_dir::<f64>(&data_dir(), Split::Train, Some(2000)).unwrap();
    let test = load_mnist_dir::<f64>(&data_dir(), Split::Test, Some(1000)).unwrap();
    let config = SweepConfig {
        train: desk_train_config(),
        ..SweepConfig::default()
    };
    let widths = [4, 16, 64];
    let result = width_sweep(&widths, &[1, 2, 3], &train, &test, &config, |_| {}).unwrap();
    let failed: Vec<String> = result
        .runs
        .iter()
        .filter_map(|r| r.outcome.as_ref().err().map(|e| format!("w{} s{}: {e}", r.width, r.seed)))
        .collect();
    if !failed.is_empty() {
        return outcome(false, format!("runs failed: {failed:?}"));
    }
    let input = input_profile(&train, &config.profile).unwrap();
    let wide: Vec<_> = result
        .runs
        .iter()
        .filter(|r| r.width == 64)
        .map(|r| r.outcome.as_ref().unwrap())
        .collect();
    let min_acc64 = wide.iter().map(|o| o.test_accuracy).fold(f64::INFINITY, f64::min);
    let ratios: Vec<f64> = wide
        .iter()
        .flat_map(|o| {
            o.profile.classes.values().map(|c| {
                c.b0_at_min_radius as f64 / input.get(c.class).map_or(1, |i| i.b0_at_min_radius).max(1) as f64
            })
        })
        .collect();
    let median_ratio = median(&ratios).unwrap_or(0.0);
    let rho_acc = result.accuracy_correlation();
    let rho_b0 = result.b0_correlation();
    let pass = min_acc64 >= 0.85
        && rho_acc.is_some_and(|r| r > 0.0)
        && rho_b0.is_some_and(|r| r > 0.0)
        && median_ratio >= 0.5;
    let summary: Vec<String> = result
        .medians()
        .iter()
        .map(|(w, a, b)| format!("w{w}: acc {a:.3}, max b0 {b}"))
        .collect();
    outcome(
        pass,
        format!(
            "{}; min width-64 accuracy {min_acc64:.3}; spearman acc {rho_acc:?}, b0 {rho_b0:?}; \
             width-64 median b0 ratio {median_ratio:.3}",
            summary.join(", ")
        ),
    )
}

fn layer_descent() -> Outcome {
    let train = load_mnist_dir::<f64>(&data_dir(), Split::Train, Some(2000)).unwrap();
    let mut widths = vec![train.feature_dim(), 4, 4, 4];
    widths.push(train.classes());
    let mut net = Network::random(&widths, Activation::square(), true, 1).unwrap();
    let log = train_sgd(&mut net, &train, &desk_train_config()).unwrap();
    let base = ProfileConfig::default();
    let mut top = 0.0f64;
    for layer in 1..=3 {
        for class in 0..train.classes() {
            let dump = extract_class_activations(&net, &train, layer, class, base.cap, base.class_seed(class)).unwrap();
            top = top.max(pairwise_distances(&dump.to_point_cloud()).max_distance());
        }
    }
    let grid = log_grid(1e-3, top, 64);
    let radius = grid[32];
    let config = ProfileConfig {
        grid: GridSpec::Fixed(grid),
        ..base
    };
    let medians: Vec<f64> = (1..=3)
        .map(|layer| {
            let p = layer_profile(&net, &train, layer, &config).unwrap();
            let b0: Vec<f64> = p.classes.values().map(|c| c.b0[32] as f64).collect();
            median(&b0).unwrap()
        })
        .collect();
    let pass = medians.windows(2).all(|w| w[0] >= w[1]);
    outcome(
        pass,
        format!(
            "train accuracy {:.3}; radius {radius:.4}; median b0 at layers 1..3: {medians:?}",
            log.final_accuracy().unwrap_or(0.0)
        ),
    )
}
