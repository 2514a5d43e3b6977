use super::{Barcode, BoundaryMatrix, Filtration};
use crate::scalar::Scalar;

const NONE: u32 = u32::MAX;

/// Column-reduction strategy. Both produce the same persistence pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reduction {
    /// Left-to-right reduction of the boundary matrix, no shortcuts.
    Standard,
    /// Reduction of the anti-transposed (coboundary) matrix, one dimension at a time
    /// from the bottom up, skipping columns already known to be deaths.
    #[default]
    Clearing,
}

/// A pairing of filtration indices; `death == None` marks an essential class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PersistencePair {
    pub dim: usize,
    pub birth: usize,
    pub death: Option<usize>,
}

/// Persistence barcode using the default strategy.
pub fn compute_persistence<T: Scalar>(filtration: &Filtration<T>) -> Barcode<T> {
    compute_persistence_with(filtration, Reduction::default())
}

pub fn compute_persistence_with<T: Scalar>(
    filtration: &Filtration<T>,
    reduction: Reduction,
) -> Barcode<T> {
    let pairs = persistence_pairs(filtration, reduction);
    Barcode::from_pairs(filtration, &pairs)
}

/// All pairs, including zero-length ones and essential classes in every dimension
/// present in the filtration (the top dimension included).
pub fn persistence_pairs<T: Scalar>(
    filtration: &Filtration<T>,
    reduction: Reduction,
) -> Vec<PersistencePair> {
    let boundary = BoundaryMatrix::from_filtration(filtration);
    let mut pairs = match reduction {
        Reduction::Standard => reduce_standard(&boundary),
        Reduction::Clearing => reduce_clearing(&boundary, filtration.max_dim()),
    };
    pairs.sort_unstable();
    pairs
}

fn reduce_standard(boundary: &BoundaryMatrix) -> Vec<PersistencePair> {
    let n = boundary.len();
    let mut owner = vec![NONE; n];
    let mut reduced: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut is_death = vec![false; n];
    let mut pairs = Vec::new();
    let mut scratch = Vec::new();
    for j in 0..n {
        let mut col = boundary.column(j).to_vec();
        while let Some(&low) = col.last() {
            let k = owner[low as usize];
            if k == NONE {
                break;
            }
            symmetric_difference(&col, &reduced[k as usize], &mut scratch);
            std::mem::swap(&mut col, &mut scratch);
        }
        if let Some(&low) = col.last() {
            owner[low as usize] = j as u32;
            is_death[j] = true;
            pairs.push(PersistencePair {
                dim: boundary.dim(low as usize),
                birth: low as usize,
                death: Some(j),
            });
        }
        reduced[j] = col;
    }
    for j in 0..n {
        if !is_death[j] && owner[j] == NONE {
            pairs.push(PersistencePair {
                dim: boundary.dim(j),
                birth: j,
                death: None,
            });
        }
    }
    pairs
}

fn reduce_clearing(boundary: &BoundaryMatrix, max_dim: usize) -> Vec<PersistencePair> {
    let n = boundary.len();
    let coboundary = boundary.coboundary();
    let mut cleared = vec![false; n];
    // owner[tau] = simplex whose reduced coboundary column has pivot tau.
    let mut owner = vec![NONE; n];
    let mut reduced: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut pairs = Vec::new();
    let mut scratch = Vec::new();

    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); max_dim + 2];
    for j in 0..n {
        by_dim[boundary.dim(j)].push(j);
    }

    for (d, column) in by_dim.iter().enumerate().take(max_dim + 1) {
        for &sigma in column.iter().rev() {
            if cleared[sigma] {
                continue;
            }
            let mut col = coboundary.column(sigma).to_vec();
            while let Some(&pivot) = col.first() {
                let k = owner[pivot as usize];
                if k == NONE {
                    break;
                }
                symmetric_difference(&col, &reduced[k as usize], &mut scratch);
                std::mem::swap(&mut col, &mut scratch);
            }
            match col.first() {
                Some(&pivot) => {
                    owner[pivot as usize] = sigma as u32;
                    cleared[pivot as usize] = true;
                    pairs.push(PersistencePair {
                        dim: d,
                        birth: sigma,
                        death: Some(pivot as usize),
                    });
                    reduced[sigma] = col;
                }
                None => pairs.push(PersistencePair {
                    dim: d,
                    birth: sigma,
                    death: None,
                }),
            }
        }
    }
    // Top-dimension simplices never pivot columns of their own; the uncleared ones are
    // births of classes one dimension above what is reported.
    for &sigma in &by_dim[max_dim + 1] {
        if !cleared[sigma] {
            pairs.push(PersistencePair {
                dim: max_dim + 1,
                birth: sigma,
                death: None,
            });
        }
    }
    pairs
}

/// Z/2 sum of two ascending index lists.
fn symmetric_difference(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    out.reserve(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}
