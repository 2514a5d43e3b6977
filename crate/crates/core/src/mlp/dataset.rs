use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Matrix, MlpError, Result};
use crate::scalar::Scalar;

/// Labelled feature matrix with class ids in `0..classes`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<T> {
    features: Matrix<T>,
    labels: Vec<usize>,
    classes: usize,
}

impl<T: Scalar> Dataset<T> {
    pub fn new(features: Matrix<T>, labels: Vec<usize>, classes: usize) -> Result<Self> {
        if features.rows() == 0 {
            return Err(MlpError::InvalidDataset("dataset is empty".into()));
        }
        if features.rows() != labels.len() {
            return Err(MlpError::InvalidDataset(format!(
                "{} feature rows but {} labels",
                features.rows(),
                labels.len()
            )));
        }
        if let Some((i, &l)) = labels.iter().enumerate().find(|(_, &l)| l >= classes) {
            return Err(MlpError::InvalidDataset(format!(
                "label {l} at row {i} is outside 0..{classes}"
            )));
        }
        if !features.is_finite() {
            return Err(MlpError::InvalidDataset("features must be finite".into()));
        }
        Ok(Self {
            features,
            labels,
            classes,
        })
    }

    /// Infers the class count as `max label + 1`.
    pub fn from_labels(features: Matrix<T>, labels: Vec<usize>) -> Result<Self> {
        let classes = labels.iter().max().map_or(0, |m| m + 1);
        Self::new(features, labels, classes)
    }

    pub fn features(&self) -> &Matrix<T> {
        &self.features
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn feature_dim(&self) -> usize {
        self.features.cols()
    }

    pub fn class_indices(&self, class: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.labels[i] == class).collect()
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.classes];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    /// Rows at `indices`, keeping the class count.
    pub fn subset(&self, indices: &[usize]) -> Self {
        Self {
            features: self.features.select_rows(indices),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            classes: self.classes,
        }
    }

    /// Up to `cap` row indices of `class`, sampled uniformly without replacement
    /// from `seed` and returned in ascending order.
    pub fn sample_class(&self, class: usize, cap: usize, seed: u64) -> Result<Vec<usize>> {
        let all = self.class_indices(class);
        if all.is_empty() {
            return Err(MlpError::EmptyClass { class });
        }
        if all.len() <= cap {
            return Ok(all);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut picked: Vec<usize> = index::sample(&mut rng, all.len(), cap)
            .into_iter()
            .map(|i| all[i])
            .collect();
        picked.sort_unstable();
        Ok(picked)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> Dataset<f64> {
        let rows: Vec<Vec<f64>> = (0..100).map(|i| vec![i as f64, 0.0]).collect();
        let labels = (0..100).map(|i| i % 3).collect();
        Dataset::new(Matrix::from_rows(&rows), labels, 4).unwrap()
    }

    #[test]
    fn validation() {
        let m = Matrix::from_rows(&[vec![1.0], vec![2.0]]);
        assert!(Dataset::new(m.clone(), vec![0, 2], 2).is_err());
        assert!(Dataset::new(m.clone(), vec![0], 2).is_err());
        assert!(Dataset::new(Matrix::from_rows(&[vec![f64::NAN]]), vec![0], 1).is_err());
        assert_eq!(Dataset::from_labels(m, vec![0, 2]).unwrap().classes(), 3);
    }

    #[test]
    fn sampling_respects_cap_and_seed() {
        let d = toy();
        let a = d.sample_class(1, 10, 5).unwrap();
        assert_eq!(a.len(), 10);
        assert!(a.iter().all(|&i| d.labels()[i] == 1));
        assert_eq!(a, d.sample_class(1, 10, 5).unwrap());
        assert_eq!(d.sample_class(2, 1000, 5).unwrap().len(), 33);
        assert!(matches!(d.sample_class(3, 10, 0), Err(MlpError::EmptyClass { class: 3 })));
    }
}
