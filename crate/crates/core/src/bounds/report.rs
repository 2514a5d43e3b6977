use std::fmt::Write;

use super::{
    theorem1_poly_bound, theorem2_relu_bound, Activation, ArchitectureSpec, BigCount,
    BoundWarning, Result,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    StrictlyDecreasing,
    NonIncreasing,
    NotMonotone,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundEntry {
    pub layer: usize,
    pub k: usize,
    pub value: BigCount,
}

/// Per-layer bounds for one or more homology dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub arch: ArchitectureSpec,
    pub entries: Vec<BoundEntry>,
    pub warnings: Vec<BoundWarning>,
}

fn format_log10(x: f64) -> String {
    crate::homology::format_significant(x, 9)
}

/// Layers at which the activation's bound is defined.
pub(crate) fn bound_layers(arch: &ArchitectureSpec) -> std::ops::Range<usize> {
    match arch.activation() {
        Activation::Relu => 1..arch.depth(),
        Activation::Polynomial { .. } => 0..arch.depth(),
    }
}

pub(crate) fn bound_at(arch: &ArchitectureSpec, k: usize, layer: usize) -> Result<BigCount> {
    let b = match arch.activation() {
        Activation::Relu => theorem2_relu_bound(arch, k, layer)?,
        Activation::Polynomial { .. } => theorem1_poly_bound(arch, k, layer)?,
    };
    Ok(b.value)
}

/// Bound on `b_k` at every layer where the activation's formula applies.
pub fn layer_bound_profile(arch: &ArchitectureSpec, k: usize) -> Result<BoundReport> {
    let entries = bound_layers(arch)
        .map(|layer| {
            Ok(BoundEntry {
                layer,
                k,
                value: bound_at(arch, k, layer)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundReport {
        arch: arch.clone(),
        entries,
        warnings: arch.shape_warnings(),
    })
}

impl BoundReport {
    /// Appends the entries of another report for the same architecture.
    pub fn merge(&mut self, other: BoundReport) {
        debug_assert_eq!(self.arch, other.arch);
        self.entries.extend(other.entries);
        self.entries.sort_by_key(|e| (e.k, e.layer));
    }

    pub fn values_for(&self, k: usize) -> Vec<&BigCount> {
        self.entries
            .iter()
            .filter(|e| e.k == k)
            .map(|e| &e.value)
            .collect()
    }

    /// Trend of the bound over increasing layer index for dimension `k`.
    pub fn monotonicity(&self, k: usize) -> Monotonicity {
        let values = self.values_for(k);
        if values.windows(2).all(|w| w[0] > w[1]) {
            Monotonicity::StrictlyDecreasing
        } else if values.windows(2).all(|w| w[0] >= w[1]) {
            Monotonicity::NonIncreasing
        } else {
            Monotonicity::NotMonotone
        }
    }

    /// `layer,k,bound_exact,bound_log10` with a header line.
    pub fn to_records(&self) -> String {
        let mut out = String::from("layer,k,bound_exact,bound_log10\n");
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                e.layer,
                e.k,
                e.value,
                format_log10(e.value.log10())
            );
        }
        out
    }

    /// Aligned plain-text table; very long integers are abbreviated.
    pub fn to_table(&self) -> String {
        let rows: Vec<[String; 4]> = self
            .entries
            .iter()
            .map(|e| {
                let exact = e.value.to_string();
                let shown = if exact.len() > 40 {
                    format!("{}...({} digits)", &exact[..12], exact.len())
                } else {
                    exact
                };
                [
                    e.layer.to_string(),
                    e.k.to_string(),
                    shown,
                    format!("{:.3}", e.value.log10()),
                ]
            })
            .collect();
        let header = ["layer", "k", "bound", "log10"];
        let mut widths = header.map(str::len);
        for r in &rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = format!("architecture {}\n", self.arch);
        let line = |cells: [&str; 4]| {
            format!(
                "{:>w0$}  {:>w1$}  {:>w2$}  {:>w3$}\n",
                cells[0],
                cells[1],
                cells[2],
                cells[3],
                w0 = widths[0],
                w1 = widths[1],
                w2 = widths[2],
                w3 = widths[3]
            )
        };
        out.push_str(&line(header));
        for r in &rows {
            out.push_str(&line([&r[0], &r[1], &r[2], &r[3]]));
        }
        let mut ks: Vec<usize> = self.entries.iter().map(|e| e.k).collect();
        ks.dedup();
        for k in ks {
            let _ = writeln!(out, "k={k}: {:?} over layers", self.monotonicity(k));
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w:?}");
        }
        out
    }
}
