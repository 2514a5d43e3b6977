use std::collections::HashMap;

use super::Filtration;
use crate::scalar::Scalar;

/// Z/2 boundary matrix of a filtration in compressed-column form. Column `j` lists the
/// filtration indices of the codimension-one faces of simplex `j`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    offsets: Vec<usize>,
    rows: Vec<u32>,
    dims: Vec<u8>,
}

impl BoundaryMatrix {
    pub fn from_filtration<T: Scalar>(filtration: &Filtration<T>) -> Self {
        let simplices = filtration.simplices();
        let index: HashMap<_, u32> = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.key(), i as u32))
            .collect();
        let mut offsets = Vec::with_capacity(simplices.len() + 1);
        let mut rows = Vec::new();
        let mut dims = Vec::with_capacity(simplices.len());
        offsets.push(0);
        for s in simplices {
            let start = rows.len();
            rows.extend(
                s.facet_keys()
                    .map(|k| *index.get(&k).expect("filtration is closed under faces")),
            );
            rows[start..].sort_unstable();
            offsets.push(rows.len());
            dims.push(s.dim() as u8);
        }
        Self {
            offsets,
            rows,
            dims,
        }
    }

    /// Builds a matrix from explicit columns; each column is sorted internally.
    pub fn from_columns(columns: Vec<Vec<u32>>, dims: Vec<u8>) -> Self {
        assert_eq!(columns.len(), dims.len());
        let mut offsets = vec![0];
        let mut rows = Vec::new();
        for mut col in columns {
            col.sort_unstable();
            rows.extend(col);
            offsets.push(rows.len());
        }
        Self {
            offsets,
            rows,
            dims,
        }
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn column(&self, j: usize) -> &[u32] {
        &self.rows[self.offsets[j]..self.offsets[j + 1]]
    }

    pub fn dim(&self, j: usize) -> usize {
        self.dims[j] as usize
    }

    /// The boundary of column `j`'s boundary, reduced mod 2. Empty for a chain complex.
    pub fn boundary_of_boundary(&self, j: usize) -> Vec<u32> {
        let mut acc: Vec<u32> = self
            .column(j)
            .iter()
            .flat_map(|&f| self.column(f as usize).iter().copied())
            .collect();
        acc.sort_unstable();
        let mut out = Vec::new();
        let mut i = 0;
        while i < acc.len() {
            let mut k = i;
            while k < acc.len() && acc[k] == acc[i] {
                k += 1;
            }
            if (k - i) % 2 == 1 {
                out.push(acc[i]);
            }
            i = k;
        }
        out
    }

    /// Transposed incidence: for every simplex, the cofaces one dimension up, ascending.
    pub(crate) fn coboundary(&self) -> BoundaryMatrix {
        let n = self.len();
        let mut counts = vec![0usize; n + 1];
        for &r in &self.rows {
            counts[r as usize + 1] += 1;
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let offsets = counts.clone();
        let mut fill = counts;
        let mut rows = vec![0u32; self.rows.len()];
        for j in 0..n {
            for &r in self.column(j) {
                rows[fill[r as usize]] = j as u32;
                fill[r as usize] += 1;
            }
        }
        Self {
            offsets,
            rows,
            dims: self.dims.clone(),
        }
    }
}
