use std::collections::BTreeSet;

use nntopo::bounds::{mv_union_bound, CoverBettiTable};
use nntopo::homology::{
    betti_at, brute_force_betti, build_rips, complex_betti, compute_persistence, pairwise_distances,
    persistence_pairs, BoundaryMatrix, Death, PointCloud, Reduction,
};
use proptest::prelude::*;

fn cloud_strategy(max_points: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    (2usize..=3).prop_flat_map(move |dim| {
        prop::collection::vec(prop::collection::vec(-1.0f64..1.0, dim), 1..=max_points)
    })
}

fn barcode_of(rows: &[Vec<f64>], radius: f64) -> nntopo::Barcode {
    let cloud = PointCloud::new(rows.to_vec()).unwrap();
    let dist = pairwise_distances(&cloud);
    compute_persistence(&build_rips(&dist, 1, radius).unwrap())
}

fn intervals(b: &nntopo::Barcode, dim: usize) -> Vec<(f64, f64)> {
    let mut v: Vec<(f64, f64)> = b
        .intervals(dim)
        .iter()
        .map(|iv| {
            let d = match iv.death {
                Death::Finite(d) => d,
                Death::Infinite => f64::INFINITY,
            };
            (iv.birth, d)
        })
        .collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

fn close(a: &[(f64, f64)], b: &[(f64, f64)], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| {
            (x.0 - y.0).abs() <= tol && (x.1 == y.1 || (x.1 - y.1).abs() <= tol)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matches_brute_force_oracle(rows in cloud_strategy(9), radius in 0.01f64..3.0) {
        let cloud = PointCloud::new(rows).unwrap();
        let dist = pairwise_distances(&cloud);
        let barcode = compute_persistence(&build_rips(&dist, 1, 3.5).unwrap());
        for dim in 0..=1 {
            prop_assert_eq!(betti_at(&barcode, dim, radius), brute_force_betti(&dist, dim, radius).unwrap());
        }
    }

    #[test]
    fn reduction_strategies_pair_identically(rows in cloud_strategy(12), max_dim in 0usize..=2) {
        let cloud = PointCloud::new(rows).unwrap();
        let f = build_rips(&pairwise_distances(&cloud), max_dim, 4.0).unwrap();
        prop_assert_eq!(persistence_pairs(&f, Reduction::Standard), persistence_pairs(&f, Reduction::Clearing));
    }

    #[test]
    fn boundary_of_boundary_vanishes(rows in cloud_strategy(10)) {
        let cloud = PointCloud::new(rows).unwrap();
        let f = build_rips(&pairwise_distances(&cloud), 2, 4.0).unwrap();
        let m = BoundaryMatrix::from_filtration(&f);
        for j in 0..m.len() {
            prop_assert!(m.boundary_of_boundary(j).is_empty());
        }
    }

    #[test]
    fn components_merge_monotonically(rows in cloud_strategy(14)) {
        let cloud = PointCloud::new(rows).unwrap();
        let dist = pairwise_distances(&cloud);
        let top = dist.max_distance().max(1e-6);
        let barcode = compute_persistence(&build_rips(&dist, 1, top).unwrap());
        let radii: Vec<f64> = (0..=40).map(|t| top * t as f64 / 40.0).collect();
        let b0: Vec<usize> = radii.iter().map(|&r| betti_at(&barcode, 0, r)).collect();
        prop_assert!(b0.windows(2).all(|w| w[1] <= w[0]));
        prop_assert_eq!(betti_at(&barcode, 0, top), 1);
    }

    #[test]
    fn permutation_invariant(rows in cloud_strategy(12), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut shuffled = rows.clone();
        shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let a = barcode_of(&rows, 4.0);
        let b = barcode_of(&shuffled, 4.0);
        prop_assert_eq!(a.to_text(), b.to_text());
    }

    #[test]
    fn rigid_motion_invariant(
        rows in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 2), 1..12),
        angle in 0.0f64..std::f64::consts::TAU,
        shift in prop::array::uniform2(-5.0f64..5.0),
    ) {
        let (s, c) = angle.sin_cos();
        let moved: Vec<Vec<f64>> = rows
            .iter()
            .map(|p| vec![c * p[0] - s * p[1] + shift[0], s * p[0] + c * p[1] + shift[1]])
            .collect();
        let a = barcode_of(&rows, 4.0);
        let b = barcode_of(&moved, 4.0);
        for dim in 0..=1 {
            prop_assert!(close(&intervals(&a, dim), &intervals(&b, dim), 1e-9));
        }
    }
}

type Complex = BTreeSet<Vec<usize>>;

fn closure(faces: &[Vec<usize>]) -> Complex {
    let mut out = Complex::new();
    for f in faces {
        for mask in 1u32..(1 << f.len()) {
            out.insert((0..f.len()).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect());
        }
    }
    out
}

fn betti(c: &Complex, k: usize) -> u64 {
    let simplices: Vec<Vec<usize>> = c.iter().cloned().collect();
    complex_betti(&simplices).unwrap().get(k).copied().unwrap_or(0) as u64
}

fn face_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::btree_set(0usize..7, 1..=3).prop_map(|s| s.into_iter().collect())
}

fn cover_strategy() -> impl Strategy<Value = Vec<Vec<Vec<usize>>>> {
    (2usize..=3).prop_flat_map(|parts| prop::collection::vec(prop::collection::vec(face_strategy(), 1..5), parts))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn two_set_exact_sequence_inequalities(groups in cover_strategy()) {
        let s1 = closure(&groups[0]);
        let s2 = closure(&groups[1]);
        let cup: Complex = s1.union(&s2).cloned().collect();
        let cap: Complex = s1.intersection(&s2).cloned().collect();
        for i in 0..=1 {
            let below = |c: &Complex| if i == 0 { 0 } else { betti(c, i - 1) };
            prop_assert!(betti(&s1, i) + betti(&s2, i) <= betti(&cup, i) + betti(&cap, i));
            prop_assert!(betti(&cup, i) <= betti(&s1, i) + betti(&s2, i) + below(&cap));
            prop_assert!(betti(&cap, i) <= betti(&s1, i) + betti(&s2, i) + betti(&cup, i + 1));
        }
    }

    #[test]
    fn cover_bound_dominates_union(groups in cover_strategy()) {
        let covers: Vec<Complex> = groups.iter().map(|g| closure(g)).collect();
        let union: Complex = covers.iter().flatten().cloned().collect();
        let parts = covers.len();
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
            let bound = mv_union_bound(&table, k);
            prop_assert!(bound.warnings.is_empty());
            prop_assert!(bound.value.to_u64().unwrap() >= betti(&union, k));
        }
    }
}
