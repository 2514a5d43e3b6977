use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::{Bound, BoundWarning};

/// Betti numbers of the intersections `S_J` of a finite cover, keyed by the sorted
/// index set `J` (0-based cover indices).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoverBettiTable {
    cover_count: usize,
    entries: BTreeMap<Vec<usize>, Vec<u64>>,
}

impl CoverBettiTable {
    pub fn new(cover_count: usize) -> Self {
        Self {
            cover_count,
            entries: BTreeMap::new(),
        }
    }

    pub fn cover_count(&self) -> usize {
        self.cover_count
    }

    /// Records `b_0, b_1, ...` of `S_J`. Indices are sorted; out-of-range indices panic.
    pub fn insert(&mut self, mut subset: Vec<usize>, betti: Vec<u64>) {
        subset.sort_unstable();
        subset.dedup();
        assert!(
            subset.iter().all(|&i| i < self.cover_count),
            "cover index out of range"
        );
        self.entries.insert(subset, betti);
    }

    pub fn get(&self, subset: &[usize]) -> Option<&[u64]> {
        self.entries.get(subset).map(Vec::as_slice)
    }
}

/// Ascending `size`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size == 0 || size > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.clone());
        let Some(pos) = (0..size).rev().find(|&p| idx[p] < n - size + p) else {
            return out;
        };
        idx[pos] += 1;
        for q in pos + 1..size {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// `sum_{i + j = k} sum_{|J| = j + 1} b_i(S_J)`: the generalised Mayer–Vietoris bound on
/// `b_k` of the union. Absent entries count as zero and are reported as warnings.
pub fn mv_union_bound(table: &CoverBettiTable, k: usize) -> Bound {
    let mut total = BigUint::from(0u32);
    let mut warnings = Vec::new();
    for j in 0..=k {
        let i = k - j;
        for subset in subsets(table.cover_count, j + 1) {
            match table.get(&subset) {
                Some(betti) => total += betti.get(i).copied().unwrap_or(0),
                None => warnings.push(BoundWarning::MissingCoverEntry(subset)),
            }
        }
    }
    Bound {
        value: total.into(),
        warnings,
    }
}
