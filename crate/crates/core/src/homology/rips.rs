use std::cmp::Ordering;

use super::{DistanceMatrix, HomologyError, Result};
use crate::scalar::{cmp_finite, Scalar};

/// Highest homology dimension the Rips pipeline computes.
pub const MAX_HOMOLOGY_DIM: usize = 2;

const MAX_VERTS: usize = MAX_HOMOLOGY_DIM + 2;
const PAD: u32 = u32::MAX;

/// A simplex of a Rips filtration, stored inline (at most four vertices).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Simplex<T> {
    verts: [u32; MAX_VERTS],
    len: u8,
    birth: T,
}

impl<T: Scalar> Simplex<T> {
    /// `vertices` must be strictly increasing with between one and four entries.
    pub fn new(vertices: &[u32], birth: T) -> Self {
        assert!(
            (1..=MAX_VERTS).contains(&vertices.len()),
            "simplex must have 1..={MAX_VERTS} vertices"
        );
        assert!(
            vertices.windows(2).all(|w| w[0] < w[1]),
            "simplex vertices must be strictly increasing"
        );
        let mut verts = [PAD; MAX_VERTS];
        verts[..vertices.len()].copy_from_slice(vertices);
        Self {
            verts,
            len: vertices.len() as u8,
            birth,
        }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.verts[..self.len as usize]
    }

    pub fn dim(&self) -> usize {
        self.len as usize - 1
    }

    pub fn birth(&self) -> T {
        self.birth
    }

    pub(crate) fn key(&self) -> [u32; MAX_VERTS] {
        self.verts
    }

    /// Keys of the codimension-one faces, in the order obtained by dropping each vertex.
    pub(crate) fn facet_keys(&self) -> impl Iterator<Item = [u32; MAX_VERTS]> + '_ {
        let len = self.len as usize;
        let n_facets = if len > 1 { len } else { 0 };
        (0..n_facets).map(move |skip| {
            let mut key = [PAD; MAX_VERTS];
            let mut w = 0;
            for (r, &v) in self.vertices().iter().enumerate() {
                if r != skip {
                    key[w] = v;
                    w += 1;
                }
            }
            key
        })
    }

    fn filtration_cmp(&self, other: &Self) -> Ordering {
        cmp_finite(&self.birth, &other.birth)
            .then(self.len.cmp(&other.len))
            .then_with(|| self.vertices().cmp(other.vertices()))
    }
}

/// Simplices sorted by `(birth, dimension, lexicographic vertices)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Filtration<T> {
    simplices: Vec<Simplex<T>>,
    max_dim: usize,
    max_radius: T,
}

impl<T: Scalar> Filtration<T> {
    /// Sorts the given simplices into filtration order. The caller is responsible for
    /// closure under faces and for monotone births.
    pub fn from_simplices(mut simplices: Vec<Simplex<T>>, max_dim: usize, max_radius: T) -> Self {
        simplices.sort_unstable_by(Simplex::filtration_cmp);
        Self {
            simplices,
            max_dim,
            max_radius,
        }
    }

    pub fn simplices(&self) -> &[Simplex<T>] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Highest homology dimension whose deaths this filtration resolves.
    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn max_radius(&self) -> T {
        self.max_radius
    }

    /// Number of simplices per dimension.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_dim + 2];
        for s in &self.simplices {
            counts[s.dim()] += 1;
        }
        counts
    }
}

/// Builds the Vietoris–Rips filtration containing every clique of dimension at most
/// `max_dim + 1` whose diameter is at most `max_radius`.
pub fn build_rips<T: Scalar>(
    dist: &DistanceMatrix<T>,
    max_dim: usize,
    max_radius: T,
) -> Result<Filtration<T>> {
    if max_dim > MAX_HOMOLOGY_DIM {
        return Err(HomologyError::UnsupportedDimension(max_dim));
    }
    if !(max_radius.is_finite() && max_radius > T::zero()) {
        return Err(HomologyError::InvalidRadius);
    }
    let n = dist.len();
    let mut simplices: Vec<Simplex<T>> = (0..n as u32)
        .map(|v| Simplex::new(&[v], T::zero()))
        .collect();

    // Higher-indexed neighbours within range, sorted ascending.
    let upper: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            (i + 1..n)
                .filter(|&j| dist.get(i, j) <= max_radius)
                .map(|j| j as u32)
                .collect()
        })
        .collect();

    for (i, nbrs) in upper.iter().enumerate() {
        for &j in nbrs {
            simplices.push(Simplex::new(&[i as u32, j], dist.get(i, j as usize)));
        }
    }

    let top_dim = max_dim + 1;
    if top_dim >= 2 {
        let mut stack = Vec::with_capacity(MAX_VERTS);
        for i in 0..n {
            stack.clear();
            stack.push(i as u32);
            extend_cliques(dist, &upper, &mut stack, &upper[i], T::zero(), top_dim, &mut simplices);
        }
    }
    Ok(Filtration::from_simplices(simplices, max_dim, max_radius))
}

/// Depth-first clique extension; `candidates` are common higher neighbours of `stack`.
fn extend_cliques<T: Scalar>(
    dist: &DistanceMatrix<T>,
    upper: &[Vec<u32>],
    stack: &mut Vec<u32>,
    candidates: &[u32],
    diameter: T,
    top_dim: usize,
    out: &mut Vec<Simplex<T>>,
) {
    for (pos, &v) in candidates.iter().enumerate() {
        let mut diam = diameter;
        for &u in stack.iter() {
            let d = dist.get(u as usize, v as usize);
            if d > diam {
                diam = d;
            }
        }
        stack.push(v);
        if stack.len() >= 3 {
            out.push(Simplex::new(stack, diam));
        }
        if stack.len() <= top_dim {
            let next: Vec<u32> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|w| upper[v as usize].binary_search(w).is_ok())
                .collect();
            if !next.is_empty() {
                extend_cliques(dist, upper, stack, &next, diam, top_dim, out);
            }
        }
        stack.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{pairwise_distances, PointCloud};

    fn square() -> DistanceMatrix<f64> {
        let cloud = PointCloud::new(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
        ])
        .unwrap();
        pairwise_distances(&cloud)
    }

    #[test]
    fn two_points() {
        let d = DistanceMatrix::new(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let f = build_rips(&d, 1, 2.0).unwrap();
        assert_eq!(f.counts_by_dim(), vec![2, 1, 0]);
        assert_eq!(f.simplices()[2].vertices(), &[0, 1]);
        assert_eq!(f.simplices()[2].birth(), 1.0);
    }

    #[test]
    fn coincident_points_order_vertices_first() {
        let d = DistanceMatrix::new(3, vec![0.0; 9]).unwrap();
        let f = build_rips(&d, 1, 1.0).unwrap();
        let dims: Vec<usize> = f.simplices().iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![0, 0, 0, 1, 1, 1, 2]);
        assert!(f.simplices().iter().all(|s| s.birth() == 0.0));
        let edges: Vec<&[u32]> = f.simplices()[3..6].iter().map(|s| s.vertices()).collect();
        assert_eq!(edges, vec![&[0, 1][..], &[0, 2], &[1, 2]]);
    }

    #[test]
    fn unit_square_counts() {
        // Hand enumeration: 4 sides at 1, 2 diagonals at sqrt 2, all 4 triangles at sqrt 2.
        let f = build_rips(&square(), 1, 2.0).unwrap();
        assert_eq!(f.counts_by_dim(), vec![4, 6, 4]);
        let edge_births: Vec<f64> = f
            .simplices()
            .iter()
            .filter(|s| s.dim() == 1)
            .map(|s| s.birth())
            .collect();
        let r2 = 2f64.sqrt();
        assert_eq!(edge_births, vec![1.0, 1.0, 1.0, 1.0, r2, r2]);
        assert!(f.simplices().iter().filter(|s| s.dim() == 2).all(|s| s.birth() == r2));
    }

    #[test]
    fn radius_truncates() {
        let f = build_rips(&square(), 1, 1.2).unwrap();
        assert_eq!(f.counts_by_dim(), vec![4, 4, 0]);
    }

    #[test]
    fn max_dim_two_adds_tetrahedra() {
        let f = build_rips(&square(), 2, 2.0).unwrap();
        assert_eq!(f.counts_by_dim(), vec![4, 6, 4, 1]);
    }

    #[test]
    fn faces_precede_cofaces() {
        let f = build_rips(&square(), 2, 2.0).unwrap();
        let pos: std::collections::HashMap<_, _> = f
            .simplices()
            .iter()
            .enumerate()
            .map(|(i, s)| (s.key(), i))
            .collect();
        for (i, s) in f.simplices().iter().enumerate() {
            for facet in s.facet_keys() {
                assert!(pos[&facet] < i);
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let d = square();
        assert_eq!(
            build_rips(&d, 3, 1.0).unwrap_err(),
            HomologyError::UnsupportedDimension(3)
        );
        assert_eq!(build_rips(&d, 1, 0.0).unwrap_err(), HomologyError::InvalidRadius);
        assert_eq!(
            build_rips(&d, 1, f64::INFINITY).unwrap_err(),
            HomologyError::InvalidRadius
        );
    }
}
