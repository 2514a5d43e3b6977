use super::{MultiPoly, Result, SemialgebraicError};
use crate::mlp::{Activation, Network};
use crate::scalar::Scalar;

/// Size guards for symbolic composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyCaps {
    pub max_width: usize,
    pub max_depth: usize,
    pub max_terms: usize,
}

impl Default for PolyCaps {
    fn default() -> Self {
        Self {
            max_width: 3,
            max_depth: 4,
            max_terms: 100_000,
        }
    }
}

/// Logits `Q_1..Q_n` as polynomials in the variables of layer `from_layer`.
///
/// Variables are the input coordinates for `from_layer == 0`, otherwise the
/// post-activation values of that hidden layer before batch normalisation (batch
/// norm is folded into the following affine map).
pub fn compose_network_poly<T: Scalar>(
    net: &Network<T>,
    from_layer: usize,
    caps: &PolyCaps,
) -> Result<Vec<MultiPoly<T>>> {
    let Activation::Polynomial(coeffs) = &net.activation else {
        return Err(SemialgebraicError::NotPolynomial);
    };
    let l = net.depth();
    if from_layer >= l {
        return Err(SemialgebraicError::LayerOutOfRange {
            layer: from_layer,
            max: l - 1,
        });
    }
    if l > caps.max_depth {
        return Err(SemialgebraicError::CapExceeded {
            what: "depth",
            value: l,
            cap: caps.max_depth,
        });
    }
    let widths = net.widths();
    if let Some(&w) = widths[from_layer..l].iter().find(|&&w| w > caps.max_width) {
        return Err(SemialgebraicError::CapExceeded {
            what: "width",
            value: w,
            cap: caps.max_width,
        });
    }
    let folded = net.fold_batch_norm();
    let vars = widths[from_layer];
    let mut current: Vec<MultiPoly<T>> = (0..vars).map(|v| MultiPoly::variable(vars, v)).collect();
    for k in from_layer + 1..=l {
        let dense = folded.dense(k);
        let mut next = Vec::with_capacity(dense.outputs());
        for r in 0..dense.outputs() {
            let mut p = MultiPoly::constant(vars, dense.bias[r]);
            for (c, q) in current.iter().enumerate() {
                let w = dense.weight.get(r, c);
                if w != T::zero() {
                    p = p.add(&q.scale(w));
                }
            }
            if k < l {
                p = p.compose_univariate(coeffs);
            }
            if p.term_count() > caps.max_terms {
                return Err(SemialgebraicError::TooManyMonomials {
                    count: p.term_count(),
                    cap: caps.max_terms,
                });
            }
            next.push(p);
        }
        current = next;
    }
    Ok(current)
}

/// Degrees of composed logits against the bound `r(l - i - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCheck {
    pub component_degrees: Vec<u32>,
    pub max_degree: u32,
    /// `r(l - i - 1)`.
    pub bound: u64,
    /// Degree of an `(l - i - 1)`-fold composition with a degree-`r` activation: `r^(l - i - 1)`.
    pub composition_bound: u64,
    pub holds: bool,
    /// Set for `i = l - 1`, where `r(l - i - 1) = 0` but the affine logits have degree up to 1;
    /// `holds` then compares against 1.
    pub last_layer: bool,
}

pub fn degree_bound_check<T: Scalar>(qs: &[MultiPoly<T>], r: u32, l: usize, i: usize) -> DegreeCheck {
    assert!(i < l, "layer index must be below the depth");
    let component_degrees: Vec<u32> = qs.iter().map(MultiPoly::degree).collect();
    let max_degree = component_degrees.iter().copied().max().unwrap_or(0);
    let steps = (l - i - 1) as u64;
    let bound = r as u64 * steps;
    let composition_bound = (r as u64).saturating_pow(steps as u32);
    let last_layer = i == l - 1;
    let holds = if last_layer {
        max_degree <= 1
    } else {
        max_degree as u64 <= bound
    };
    DegreeCheck {
        component_degrees,
        max_degree,
        bound,
        composition_bound,
        holds,
        last_layer,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlp::{DenseLayer, HiddenLayer, Matrix};

    fn identity_square_net() -> Network<f64> {
        let id = || DenseLayer::new(Matrix::identity(2), vec![0.0; 2]).unwrap();
        Network::new(
            vec![HiddenLayer {
                dense: id(),
                batch_norm: None,
            }],
            id(),
            Activation::square(),
        )
        .unwrap()
    }

    #[test]
    fn identity_net_gives_squares() {
        let qs = compose_network_poly(&identity_square_net(), 0, &PolyCaps::default()).unwrap();
        assert_eq!(qs[0], MultiPoly::from_terms(2, [(vec![2, 0], 1.0)]));
        assert_eq!(qs[1], MultiPoly::from_terms(2, [(vec![0, 2], 1.0)]));
    }

    #[test]
    fn from_last_hidden_layer_is_affine() {
        let net = identity_square_net();
        let qs = compose_network_poly(&net, 1, &PolyCaps::default()).unwrap();
        let check = degree_bound_check(&qs, 2, 2, 1);
        assert_eq!(check.max_degree, 1);
        assert_eq!(check.bound, 0);
        assert!(check.last_layer && check.holds);
    }

    #[test]
    fn matches_forward_with_batch_norm() {
        let mut net: Network<f64> = Network::random(&[3, 3, 2, 3], Activation::Polynomial(vec![0.5, -1.0, 2.0]), true, 4).unwrap();
        for h in &mut net.hidden {
            let bn = h.batch_norm.as_mut().unwrap();
            bn.running_mean.iter_mut().for_each(|m| *m = 0.3);
            bn.running_var.iter_mut().for_each(|v| *v = 2.0);
            bn.gamma.iter_mut().for_each(|g| *g = 0.7);
        }
        let qs = compose_network_poly(&net, 0, &PolyCaps::default()).unwrap();
        let x = [0.4, -1.1, 0.9];
        let logits = net.forward(&Matrix::from_rows(&[x.to_vec()])).unwrap().logits;
        for (c, q) in qs.iter().enumerate() {
            assert!((q.evaluate(&x) - logits.get(0, c)).abs() < 1e-10);
        }
        let check = degree_bound_check(&qs, 2, 3, 0);
        assert_eq!(check.max_degree, 4);
        assert!(check.holds);
    }

    #[test]
    fn zero_weights_have_degree_zero() {
        let mut net: Network<f64> = Network::random(&[2, 2, 2, 2], Activation::square(), false, 1).unwrap();
        for p in net.parameters_mut() {
            p.fill(0.0);
        }
        let qs = compose_network_poly(&net, 0, &PolyCaps::default()).unwrap();
        assert!(degree_bound_check(&qs, 2, 3, 0).holds);
        assert_eq!(degree_bound_check(&qs, 2, 3, 0).max_degree, 0);
    }

    #[test]
    fn guards() {
        let relu: Network<f64> = Network::random(&[2, 2, 2], Activation::Relu, false, 1).unwrap();
        assert!(matches!(
            compose_network_poly(&relu, 0, &PolyCaps::default()),
            Err(SemialgebraicError::NotPolynomial)
        ));
        let wide: Network<f64> = Network::random(&[2, 5, 2], Activation::square(), false, 1).unwrap();
        assert!(matches!(
            compose_network_poly(&wide, 0, &PolyCaps::default()),
            Err(SemialgebraicError::CapExceeded { what: "width", .. })
        ));
        let caps = PolyCaps {
            max_terms: 3,
            ..PolyCaps::default()
        };
        let net: Network<f64> = Network::random(&[3, 3, 3, 2], Activation::square(), false, 1).unwrap();
        assert!(matches!(
            compose_network_poly(&net, 0, &caps),
            Err(SemialgebraicError::TooManyMonomials { cap: 3, .. })
        ));
    }
}
