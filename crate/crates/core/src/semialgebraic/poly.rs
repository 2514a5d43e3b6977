use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Sparse multivariate polynomial over a fixed number of variables.
///
/// Terms map exponent vectors to nonzero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly<T> {
    vars: usize,
    terms: BTreeMap<Vec<u32>, T>,
}

impl<T: Scalar> MultiPoly<T> {
    pub fn zero(vars: usize) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: T) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    /// The polynomial `x_index`.
    pub fn variable(vars: usize, index: usize) -> Self {
        assert!(index < vars, "variable index out of range");
        let mut e = vec![0; vars];
        e[index] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, T::one());
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms(vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, T)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars, "exponent vector length must equal the variable count");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exponents: Vec<u32>, c: T) {
        if c == T::zero() {
            return;
        }
        match self.terms.entry(exponents) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == T::zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], T)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> T {
        self.terms.get(exponents).copied().unwrap_or(T::zero())
    }

    /// Maximum total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn evaluate(&self, x: &[T]) -> T {
        assert_eq!(x.len(), self.vars, "point dimension must equal the variable count");
        self.terms
            .iter()
            .map(|(e, &c)| {
                e.iter()
                    .zip(x)
                    .fold(c, |acc, (&k, &xi)| acc * xi.powi(k as i32))
            })
            .sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable counts differ");
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-T::one()))
    }

    pub fn scale(&self, s: T) -> Self {
        Self::from_terms(self.vars, self.terms.iter().map(|(e, &c)| (e.clone(), c * s)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable counts differ");
        let mut out = Self::zero(self.vars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// `Σ_k c_k p^k` by Horner's rule, coefficients in ascending order.
    pub fn compose_univariate(&self, coeffs: &[T]) -> Self {
        let mut acc = Self::zero(self.vars);
        for &c in coeffs.iter().rev() {
            acc = acc.mul(self).add(&Self::constant(self.vars, c));
        }
        acc
    }
}

impl<T: Scalar> fmt::Display for MultiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{k}")?,
                }
            }
        }
        Ok(())
    }
}
