use super::{AdvisorError, ClassProfile, Result};

/// Input versus layer `b_0` at the smallest radius for one class.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassComparison {
    pub class: usize,
    pub input_b0: usize,
    pub layer_b0: usize,
    /// `layer_b0 / input_b0`.
    pub ratio: f64,
    pub inefficient: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpressivenessReport {
    pub threshold_fraction: f64,
    pub classes: Vec<ClassComparison>,
    pub max_layer_b0: usize,
    pub accuracy: Option<f64>,
}

impl ExpressivenessReport {
    pub fn flagged(&self) -> Vec<usize> {
        self.classes.iter().filter(|c| c.inefficient).map(|c| c.class).collect()
    }

    pub fn is_efficient(&self) -> bool {
        self.classes.iter().all(|c| !c.inefficient)
    }

    pub fn with_accuracy(mut self, accuracy: f64) -> Self {
        self.accuracy = Some(accuracy);
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "threshold fraction {}\nclass,input_b0,layer_b0,ratio,inefficient\n",
            self.threshold_fraction
        );
        for c in &self.classes {
            out.push_str(&format!(
                "{},{},{},{:.4},{}\n",
                c.class, c.input_b0, c.layer_b0, c.ratio, c.inefficient
            ));
        }
        out.push_str(&format!("max layer b0 at min radius: {}\n", self.max_layer_b0));
        if let Some(a) = self.accuracy {
            out.push_str(&format!("accuracy: {a:.4}\n"));
        }
        let verdict = if self.is_efficient() {
            "efficient".to_string()
        } else {
            format!("inefficient (classes {:?})", self.flagged())
        };
        out.push_str(&format!("verdict: {verdict}\n"));
        out
    }
}

/// Flags classes whose layer `b_0` at the smallest radius falls below
/// `threshold_fraction` times the input value.
pub fn compare(input: &ClassProfile, layer: &ClassProfile, threshold_fraction: f64) -> Result<ExpressivenessReport> {
    let a: Vec<usize> = input.classes.keys().copied().collect();
    let b: Vec<usize> = layer.classes.keys().copied().collect();
    if a != b {
        return Err(AdvisorError::ClassMismatch { input: a, layer: b });
    }
    let classes = input
        .classes
        .values()
        .zip(layer.classes.values())
        .map(|(i, l)| {
            let ratio = l.b0_at_min_radius as f64 / i.b0_at_min_radius.max(1) as f64;
            ClassComparison {
                class: i.class,
                input_b0: i.b0_at_min_radius,
                layer_b0: l.b0_at_min_radius,
                ratio,
                inefficient: (l.b0_at_min_radius as f64) < threshold_fraction * i.b0_at_min_radius as f64,
            }
        })
        .collect();
    Ok(ExpressivenessReport {
        threshold_fraction,
        classes,
        max_layer_b0: layer.max_b0_at_min_radius(),
        accuracy: None,
    })
}
