use std::fmt;

use super::{BoundWarning, BoundsError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Activation {
    Relu,
    /// Polynomial activation of the given degree `r >= 1`.
    Polynomial { degree: usize },
}

impl Activation {
    pub fn name(&self) -> &'static str {
        match self {
            Activation::Relu => "relu",
            Activation::Polynomial { .. } => "polynomial",
        }
    }
}

/// Layer widths `n_0..=n_l` (`n_l` = class count) plus activation kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArchitectureSpec {
    widths: Vec<usize>,
    activation: Activation,
}

impl ArchitectureSpec {
    pub fn new(widths: Vec<usize>, activation: Activation) -> Result<Self> {
        if widths.len() < 2 {
            return Err(BoundsError::TooFewLayers);
        }
        if let Some(index) = widths.iter().position(|&w| w == 0) {
            return Err(BoundsError::ZeroWidth { index });
        }
        let classes = *widths.last().expect("nonempty");
        if classes < 2 {
            return Err(BoundsError::TooFewClasses(classes));
        }
        if let Activation::Polynomial { degree: 0 } = activation {
            return Err(BoundsError::ZeroDegree);
        }
        Ok(Self { widths, activation })
    }

    /// Equal hidden widths: `input, hidden × (depth - 1), classes`.
    pub fn uniform(
        input: usize,
        hidden: usize,
        depth: usize,
        classes: usize,
        activation: Activation,
    ) -> Result<Self> {
        if depth == 0 {
            return Err(BoundsError::TooFewLayers);
        }
        let mut widths = vec![input];
        widths.extend(std::iter::repeat_n(hidden, depth - 1));
        widths.push(classes);
        Self::new(widths, activation)
    }

    pub fn widths(&self) -> &[usize] {
        &self.widths
    }

    pub fn width(&self, layer: usize) -> usize {
        self.widths[layer]
    }

    /// Number of layers `l` (dense maps).
    pub fn depth(&self) -> usize {
        self.widths.len() - 1
    }

    pub fn classes(&self) -> usize {
        *self.widths.last().expect("nonempty")
    }

    pub fn activation(&self) -> Activation {
        self.activation
    }

    /// `n_p <= n_q` for all `p >= q`.
    pub fn is_non_increasing(&self) -> bool {
        self.widths.windows(2).all(|w| w[1] <= w[0])
    }

    pub(crate) fn shape_warnings(&self) -> Vec<BoundWarning> {
        if self.is_non_increasing() {
            Vec::new()
        } else {
            vec![BoundWarning::NotNonIncreasing]
        }
    }

    pub fn with_width(&self, index: usize, width: usize) -> Result<Self> {
        let mut widths = self.widths.clone();
        widths[index] = width;
        Self::new(widths, self.activation)
    }
}

impl fmt::Display for ArchitectureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let widths: Vec<String> = self.widths.iter().map(usize::to_string).collect();
        match self.activation {
            Activation::Relu => write!(f, "[{}] relu", widths.join(",")),
            Activation::Polynomial { degree } => write!(f, "[{}] poly(r={degree})", widths.join(",")),
        }
    }
}
