use rayon::prelude::*;

use super::{HomologyError, Result};
use crate::scalar::Scalar;

/// A finite set of points in `R^d`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud<T> {
    dim: usize,
    coords: Vec<T>,
}

impl<T: Scalar> PointCloud<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        let first = rows.first().ok_or(HomologyError::EmptyCloud)?;
        let dim = first.len();
        if dim == 0 {
            return Err(HomologyError::ZeroDimension);
        }
        let mut coords = Vec::with_capacity(rows.len() * dim);
        for (index, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(HomologyError::DimensionMismatch {
                    index,
                    expected: dim,
                    found: row.len(),
                });
            }
            coords.extend_from_slice(row);
        }
        Self::from_flat(dim, coords)
    }

    pub fn from_flat(dim: usize, coords: Vec<T>) -> Result<Self> {
        if dim == 0 {
            return Err(HomologyError::ZeroDimension);
        }
        if coords.is_empty() {
            return Err(HomologyError::EmptyCloud);
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(HomologyError::DimensionMismatch {
                index: coords.len() / dim,
                expected: dim,
                found: coords.len() % dim,
            });
        }
        if let Some(pos) = coords.iter().position(|c| !c.is_finite()) {
            return Err(HomologyError::NonFiniteCoordinate { index: pos / dim });
        }
        Ok(Self { dim, coords })
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[T]> {
        self.coords.chunks_exact(self.dim)
    }

    /// Applies `f` to every point, keeping the cloud shape.
    pub fn map_points(&self, mut f: impl FnMut(&[T]) -> Vec<T>) -> Result<Self> {
        Self::new(self.points().map(&mut f).collect())
    }
}

/// Symmetric matrix of pairwise distances with an exactly zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix<T> {
    size: usize,
    entries: Vec<T>,
}

impl<T: Scalar> DistanceMatrix<T> {
    /// Validates a dense row-major `size × size` matrix.
    pub fn new(size: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(HomologyError::DistanceShape {
                expected: size * size,
                found: entries.len(),
            });
        }
        for row in 0..size {
            if entries[row * size + row] != T::zero() {
                return Err(HomologyError::InvalidDistance {
                    row,
                    col: row,
                    reason: "diagonal must be zero",
                });
            }
            for col in 0..size {
                let d = entries[row * size + col];
                if !d.is_finite() {
                    return Err(HomologyError::InvalidDistance {
                        row,
                        col,
                        reason: "entry must be finite",
                    });
                }
                if d < T::zero() {
                    return Err(HomologyError::InvalidDistance {
                        row,
                        col,
                        reason: "entry must be nonnegative",
                    });
                }
                if d != entries[col * size + row] {
                    return Err(HomologyError::InvalidDistance {
                        row,
                        col,
                        reason: "matrix must be symmetric",
                    });
                }
            }
        }
        Ok(Self { size, entries })
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    /// Largest entry; zero for a single point.
    pub fn max_distance(&self) -> T {
        self.entries
            .iter()
            .copied()
            .fold(T::zero(), |acc, d| if d > acc { d } else { acc })
    }

    /// Restriction to the given vertex subset, in the given order.
    pub fn submatrix(&self, vertices: &[usize]) -> Self {
        let m = vertices.len();
        let mut entries = Vec::with_capacity(m * m);
        for &a in vertices {
            for &b in vertices {
                entries.push(self.get(a, b));
            }
        }
        Self { size: m, entries }
    }
}

const PARALLEL_THRESHOLD: usize = 256;

/// Euclidean distances. Each unordered pair is computed once and mirrored, so the
/// result is exactly symmetric.
pub fn pairwise_distances<T: Scalar>(cloud: &PointCloud<T>) -> DistanceMatrix<T> {
    let n = cloud.len();
    let upper_row = |i: usize| -> Vec<T> {
        let p = cloud.point(i);
        (i + 1..n)
            .map(|j| {
                let q = cloud.point(j);
                p.iter()
                    .zip(q)
                    .map(|(&a, &b)| (a - b) * (a - b))
                    .sum::<T>()
                    .sqrt()
            })
            .collect()
    };
    let rows: Vec<Vec<T>> = if n >= PARALLEL_THRESHOLD {
        (0..n).into_par_iter().map(upper_row).collect()
    } else {
        (0..n).map(upper_row).collect()
    };
    let mut entries = vec![T::zero(); n * n];
    for (i, row) in rows.into_iter().enumerate() {
        for (offset, d) in row.into_iter().enumerate() {
            let j = i + 1 + offset;
            entries[i * n + j] = d;
            entries[j * n + i] = d;
        }
    }
    DistanceMatrix { size: n, entries }
}
