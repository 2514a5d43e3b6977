use nntopo::bounds::{
    basu_bound, layer_bound_profile, milnor_bound, min_width_for, theorem1_poly_bound, theorem2_relu_bound,
    Activation, ArchitectureSpec, BigCount, FreeWidth,
};
use num_bigint::BigUint;
use proptest::prelude::*;

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn power(base: u64, exp: i64) -> BigUint {
    (0..exp).fold(big(1), |acc, _| acc * base)
}

fn factorial(n: i64) -> BigUint {
    (1..=n.max(0) as u64).fold(big(1), |acc, k| acc * k)
}

fn choose(a: i64, b: i64) -> BigUint {
    if a < 0 || b < 0 || b > a {
        return big(0);
    }
    factorial(a) / (factorial(b) * factorial(a - b))
}

fn oracle_theorem2(widths: &[usize], k: usize, layer: usize) -> BigUint {
    let l = widths.len() - 1;
    let n = widths[l] as i64;
    let s: i64 = widths[layer..l].iter().map(|&w| w as i64).sum();
    let mut total = big(0);
    let mut p = 0;
    while p <= (k as i64).min(n - 2) {
        total += choose(n - 1, p + 1) * (power(3, s + n - 2 - p) - big(1));
        p += 1;
    }
    total
}

fn oracle_theorem1(widths: &[usize], r: usize, k: usize, layer: usize) -> BigUint {
    let l = widths.len() - 1;
    let n = widths[l] as i64;
    let term = |p: i64| choose(n - 1, p + 1) * (power(3, n - 2 - p) - big(1));
    let bracket: BigUint = if (k as i64) < n - 2 {
        (0..=k as i64).map(term).sum()
    } else {
        (0..=n - 3).map(term).sum::<BigUint>() + big(1)
    };
    if layer == l - 1 {
        return bracket;
    }
    let m = (r * (l - layer - 1)) as u64;
    bracket * m * power(2 * m - 1, widths[layer] as i64 - 1)
}

fn to_big(b: &BigCount) -> BigUint {
    b.as_biguint().clone()
}

/// `(input, hidden, depth, classes)` with the input as wide as the hidden layers.
fn equal_widths() -> impl Strategy<Value = (usize, usize, usize, usize)> {
    (1usize..8, 2usize..6, 2usize..6).prop_map(|(w, depth, classes)| (w, w, depth, classes))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn relu_matches_independent_evaluation(
        widths in prop::collection::vec(1usize..9, 2..6),
        classes in 2usize..7,
        k in 0usize..6,
        pick in any::<prop::sample::Index>(),
    ) {
        let mut all = widths;
        all.push(classes);
        let arch = ArchitectureSpec::new(all.clone(), Activation::Relu).unwrap();
        let layer = 1 + pick.index(arch.depth() - 1);
        let got = theorem2_relu_bound(&arch, k, layer).unwrap();
        prop_assert_eq!(to_big(&got.value), oracle_theorem2(&all, k, layer));
        prop_assert_eq!(got.warnings.is_empty(), arch.is_non_increasing());
    }

    #[test]
    fn polynomial_matches_independent_evaluation(
        widths in prop::collection::vec(1usize..9, 1..5),
        classes in 2usize..7,
        r in 1usize..5,
        k in 0usize..6,
        pick in any::<prop::sample::Index>(),
    ) {
        let mut all = widths;
        all.push(classes);
        let arch = ArchitectureSpec::new(all.clone(), Activation::Polynomial { degree: r }).unwrap();
        let layer = pick.index(arch.depth());
        let got = theorem1_poly_bound(&arch, k, layer).unwrap().value;
        prop_assert_eq!(to_big(&got), oracle_theorem1(&all, r, k, layer));
        prop_assert_eq!(theorem1_poly_bound(&arch, k, layer).unwrap().value, got);
    }

    #[test]
    fn polynomial_branch_boundary_never_decreases(classes in 3usize..9, r in 1usize..4, width in 1usize..5) {
        let arch = ArchitectureSpec::uniform(width, width, 3, classes, Activation::Polynomial { degree: r }).unwrap();
        for layer in 0..arch.depth() {
            let below = theorem1_poly_bound(&arch, classes - 3, layer).unwrap().value;
            let at = theorem1_poly_bound(&arch, classes - 2, layer).unwrap().value;
            prop_assert!(at >= below);
        }
    }

    #[test]
    fn equal_widths_descend_over_layers((input, hidden, depth, classes) in equal_widths(), r in 1usize..4, k in 0usize..4) {
        for act in [Activation::Relu, Activation::Polynomial { degree: r }] {
            let arch = ArchitectureSpec::uniform(input, hidden, depth, classes, act).unwrap();
            let report = layer_bound_profile(&arch, k).unwrap();
            let values = report.values_for(k);
            prop_assert!(values.windows(2).all(|w| w[0] >= w[1]), "{arch}: {values:?}");
        }
    }

    #[test]
    fn bounds_grow_with_width(
        (input, hidden, depth, classes) in equal_widths(),
        r in 1usize..4,
        k in 0usize..4,
        pick in any::<prop::sample::Index>(),
    ) {
        for act in [Activation::Relu, Activation::Polynomial { degree: r }] {
            let arch = ArchitectureSpec::uniform(input, hidden, depth, classes, act).unwrap();
            let grown = arch.with_width(pick.index(depth), arch.width(pick.index(depth)) + 1).unwrap();
            let a = layer_bound_profile(&arch, k).unwrap();
            let b = layer_bound_profile(&grown, k).unwrap();
            for (x, y) in a.entries.iter().zip(&b.entries) {
                prop_assert!(y.value >= x.value);
            }
        }
    }

    #[test]
    fn basu_and_milnor_match_closed_forms(n in 1usize..12, d in 1usize..6, vars in 1usize..8) {
        let milnor = big(d as u64) * power(2 * d as u64 - 1, vars as i64 - 1);
        prop_assert_eq!(to_big(&milnor_bound(vars, d).unwrap()), milnor.clone());
        prop_assert_eq!(to_big(&basu_bound(n, d, vars).unwrap()), (power(3, n as i64) - big(1)) * milnor);
    }

    #[test]
    fn minimum_width_is_tight(classes in 2usize..5, depth in 2usize..5, target in 1u64..1_000_000) {
        let template = ArchitectureSpec::uniform(4, 1, depth, classes, Activation::Relu).unwrap();
        let target = BigCount::from(target);
        let w = min_width_for(&template, FreeWidth::AllHidden, 1, 0, &target, 64).unwrap();
        let at = |w: usize| {
            let a = ArchitectureSpec::uniform(4, w, depth, classes, Activation::Relu).unwrap();
            theorem2_relu_bound(&a, 0, 1).unwrap().value
        };
        prop_assert!(at(w) >= target);
        prop_assert!(w == 1 || at(w - 1) < target);
    }
}
