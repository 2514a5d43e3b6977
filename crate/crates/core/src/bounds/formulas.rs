use num_bigint::BigUint;
use num_traits::{pow, One, Zero};

use super::{Activation, ArchitectureSpec, BigCount, BoundWarning, BoundsError, Result};

/// An evaluated bound with any warnings about its hypotheses.
#[derive(Debug, Clone, PartialEq)]
pub struct Bound {
    pub value: BigCount,
    pub warnings: Vec<BoundWarning>,
}

/// `C(a, b)`, zero when `b < 0`, `b > a` or `a < 0`.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if a < 0 || b < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    for t in 0..b {
        acc *= a - t;
        acc /= t + 1;
    }
    acc
}

fn pow_u(base: u64, exp: usize) -> BigUint {
    pow(BigUint::from(base), exp)
}

/// `3^e - 1` for `e >= 0`.
fn three_pow_minus_one(exp: i64) -> BigUint {
    debug_assert!(exp >= 0);
    pow_u(3, exp as usize) - 1u32
}

/// Bracketed class-combinatorics factor shared by both polynomial cases.
fn poly_class_sum(classes: usize, k: usize) -> BigUint {
    let n = classes as i64;
    let k = k as i64;
    let term = |p: i64| binomial(n - 1, p + 1) * three_pow_minus_one(n - 2 - p);
    if k < n - 2 {
        (0..=k).map(term).sum()
    } else {
        (0..=n - 3).map(term).sum::<BigUint>() + 1u32
    }
}

fn check_layer(layer: usize, min: usize, max: usize) -> Result<()> {
    if layer < min || layer > max || max < min {
        return Err(BoundsError::LayerOutOfRange { layer, min, max });
    }
    Ok(())
}

/// Upper bound on `b_k` of the closed class pre-image at layer `layer` for a
/// polynomial-activation network (`0 <= layer <= l - 1`).
pub fn theorem1_poly_bound(arch: &ArchitectureSpec, k: usize, layer: usize) -> Result<Bound> {
    let Activation::Polynomial { degree } = arch.activation() else {
        return Err(BoundsError::WrongActivation {
            expected: "polynomial",
            found: arch.activation().name(),
        });
    };
    let l = arch.depth();
    check_layer(layer, 0, l - 1)?;
    let mut value = poly_class_sum(arch.classes(), k);
    if layer < l - 1 {
        let m = (degree * (l - layer - 1)) as u64;
        value *= m;
        value *= pow_u(2 * m - 1, arch.width(layer) - 1);
    }
    Ok(Bound {
        value: value.into(),
        warnings: arch.shape_warnings(),
    })
}

/// Upper bound on `b_k` of the closed class pre-image at hidden layer `layer` for a
/// ReLU network (`1 <= layer <= l - 1`).
pub fn theorem2_relu_bound(arch: &ArchitectureSpec, k: usize, layer: usize) -> Result<Bound> {
    if arch.activation() != Activation::Relu {
        return Err(BoundsError::WrongActivation {
            expected: "relu",
            found: arch.activation().name(),
        });
    }
    let l = arch.depth();
    check_layer(layer, 1, l.saturating_sub(1))?;
    let n = arch.classes() as i64;
    let width_sum: usize = arch.widths()[layer..l].iter().sum();
    let top = (k as i64).min(n - 2);
    let value: BigUint = (0..=top)
        .map(|p| binomial(n - 1, p + 1) * three_pow_minus_one(width_sum as i64 + n - 2 - p))
        .sum();
    Ok(Bound {
        value: value.into(),
        warnings: arch.shape_warnings(),
    })
}

/// `(3^n - 1) d (2d - 1)^(k - 1)` for a set cut out by `n` inequalities of degree `<= d`
/// in `k` variables.
pub fn basu_bound(n_ineq: usize, degree: usize, vars: usize) -> Result<BigCount> {
    for (name, v) in [("inequality count", n_ineq), ("degree", degree), ("variable count", vars)] {
        if v == 0 {
            return Err(BoundsError::NonPositive { name });
        }
    }
    let d = degree as u64;
    let value = three_pow_minus_one(n_ineq as i64) * d * pow_u(2 * d - 1, vars - 1);
    Ok(value.into())
}

/// `d (2d - 1)^(k - 1)`: total Betti number of a real algebraic set of degree `d` in `R^k`.
pub fn milnor_bound(vars: usize, degree: usize) -> Result<BigCount> {
    for (name, v) in [("variable count", vars), ("degree", degree)] {
        if v == 0 {
            return Err(BoundsError::NonPositive { name });
        }
    }
    let d = degree as u64;
    Ok((BigUint::from(d) * pow_u(2 * d - 1, vars - 1)).into())
}
