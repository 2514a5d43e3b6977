use super::{MultiPoly, Result, SemialgebraicError};
use crate::scalar::Scalar;

/// Piece of the class-`j` decision boundary where logit `j` ties with every logit
/// in `alphas` and dominates the rest.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverDescriptor<T> {
    pub class: usize,
    pub alphas: Vec<usize>,
    /// `Q_j - Q_α = 0` for each `α`.
    pub equalities: Vec<MultiPoly<T>>,
    /// `Q_j - Q_q >= 0` for each remaining `q`.
    pub inequalities: Vec<MultiPoly<T>>,
}

impl<T: Scalar> CoverDescriptor<T> {
    /// Whether `x` satisfies the system up to an absolute tolerance.
    pub fn contains(&self, x: &[T], tol: T) -> bool {
        self.equalities.iter().all(|p| p.evaluate(x).abs() <= tol)
            && self.inequalities.iter().all(|p| p.evaluate(x) >= -tol)
    }
}

/// Cover piece for class `j` tied with the index set `alphas`.
pub fn cover_intersection<T: Scalar>(qs: &[MultiPoly<T>], j: usize, alphas: &[usize]) -> Result<CoverDescriptor<T>> {
    let n = qs.len();
    validate_alphas(n, j, alphas)?;
    let mut sorted = alphas.to_vec();
    sorted.sort_unstable();
    let equalities = sorted.iter().map(|&a| qs[j].sub(&qs[a])).collect();
    let inequalities = (0..n)
        .filter(|q| *q != j && !sorted.contains(q))
        .map(|q| qs[j].sub(&qs[q]))
        .collect();
    Ok(CoverDescriptor {
        class: j,
        alphas: sorted,
        equalities,
        inequalities,
    })
}

/// Top-level cover of the class-`j` boundary: one piece per other class.
pub fn poly_cover<T: Scalar>(qs: &[MultiPoly<T>], j: usize) -> Result<Vec<CoverDescriptor<T>>> {
    if qs.len() < 2 {
        return Err(SemialgebraicError::InvalidClass { class: j, classes: qs.len() });
    }
    (0..qs.len())
        .filter(|&p| p != j)
        .map(|p| cover_intersection(qs, j, &[p]))
        .collect()
}

pub(crate) fn validate_alphas(n: usize, j: usize, alphas: &[usize]) -> Result<()> {
    if j >= n || n < 2 {
        return Err(SemialgebraicError::InvalidClass { class: j, classes: n });
    }
    let mut seen = vec![false; n];
    for &a in alphas {
        if a >= n || a == j || seen[a] {
            return Err(SemialgebraicError::InvalidAlphas {
                alphas: alphas.to_vec(),
                class: j,
            });
        }
        seen[a] = true;
    }
    if alphas.is_empty() {
        return Err(SemialgebraicError::InvalidAlphas {
            alphas: Vec::new(),
            class: j,
        });
    }
    Ok(())
}
