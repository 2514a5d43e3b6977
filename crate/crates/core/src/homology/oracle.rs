//! Rank–nullity Betti numbers by dense Z/2 elimination. Deliberately independent of
//! the filtration and reduction code so it can serve as a cross-check.

use std::collections::{BTreeSet, HashMap};

use super::{DistanceMatrix, HomologyError, Result};
use crate::scalar::Scalar;

/// Point-count guard for [`brute_force_betti`]; subsets are enumerated as bitmasks.
pub const BRUTE_FORCE_MAX_POINTS: usize = 16;

/// Rank over Z/2 of a matrix given as packed bit rows (all the same word length).
pub fn gf2_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let words = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for bit in 0..words * 64 {
        let (w, mask) = (bit / 64, 1u64 << (bit % 64));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & mask != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & mask != 0 {
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank of the boundary map from `k`-simplices to `(k-1)`-simplices.
fn boundary_rank(k_simplices: &[Vec<usize>], faces: &HashMap<Vec<usize>, usize>) -> usize {
    if k_simplices.is_empty() || faces.is_empty() {
        return 0;
    }
    let words = faces.len().div_ceil(64);
    let rows = k_simplices
        .iter()
        .map(|s| {
            let mut row = vec![0u64; words];
            for skip in 0..s.len() {
                let face: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                let idx = faces[&face];
                row[idx / 64] ^= 1 << (idx % 64);
            }
            row
        })
        .collect();
    gf2_rank(rows)
}

fn index_map(simplices: &[Vec<usize>]) -> HashMap<Vec<usize>, usize> {
    simplices
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect()
}

/// `b_dim` of the clique complex with edges of length `<= radius`, via
/// `dim C_dim - rank ∂_dim - rank ∂_{dim+1}`.
pub fn brute_force_betti<T: Scalar>(dist: &DistanceMatrix<T>, dim: usize, radius: T) -> Result<usize> {
    let n = dist.len();
    if n > BRUTE_FORCE_MAX_POINTS {
        return Err(HomologyError::TooManyPoints {
            limit: BRUTE_FORCE_MAX_POINTS,
            found: n,
        });
    }
    let mut by_size: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dim + 3];
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size > dim + 2 || (dim > 0 && size < dim) {
            continue;
        }
        let verts: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let clique = verts
            .iter()
            .enumerate()
            .all(|(i, &a)| verts[i + 1..].iter().all(|&b| dist.get(a, b) <= radius));
        if clique {
            by_size[size].push(verts);
        }
    }
    let chains = &by_size[dim + 1];
    let rank_down = if dim == 0 {
        0
    } else {
        boundary_rank(chains, &index_map(&by_size[dim]))
    };
    let rank_up = boundary_rank(&by_size[dim + 2], &index_map(chains));
    Ok(chains.len() - rank_down - rank_up)
}

/// Betti numbers `b_0..=b_top` of an explicit simplicial complex over Z/2. The input
/// must be closed under taking faces; vertex lists may be in any order.
pub fn complex_betti(simplices: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
    for s in simplices {
        let mut v = s.clone();
        v.sort_unstable();
        let len = v.len();
        v.dedup();
        if v.len() != len || v.is_empty() {
            return Err(HomologyError::DegenerateSimplex(s.clone()));
        }
        set.insert(v);
    }
    for s in &set {
        if s.len() < 2 {
            continue;
        }
        for skip in 0..s.len() {
            let face: Vec<usize> = s
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            if !set.contains(&face) {
                return Err(HomologyError::NotClosedUnderFaces {
                    simplex: s.clone(),
                    face,
                });
            }
        }
    }
    let top = set.iter().map(Vec::len).max().unwrap_or(0);
    if top == 0 {
        return Ok(Vec::new());
    }
    let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top];
    for s in set {
        by_dim[s.len() - 1].push(s);
    }
    let maps: Vec<_> = by_dim.iter().map(|s| index_map(s)).collect();
    let ranks: Vec<usize> = (0..top)
        .map(|k| if k == 0 { 0 } else { boundary_rank(&by_dim[k], &maps[k - 1]) })
        .collect();
    Ok((0..top)
        .map(|k| by_dim[k].len() - ranks[k] - ranks.get(k + 1).copied().unwrap_or(0))
        .collect())
}
