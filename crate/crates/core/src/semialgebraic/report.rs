use super::relu::{relu_cover_solve, sample_boundary, verify_ambiguity, SampleConfig};
use super::{Result, SemialgebraicError};
use crate::mlp::Network;

/// Verification outcome for one `(j, α)` boundary piece.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverReportEntry {
    pub class: usize,
    pub alphas: Vec<usize>,
    pub equations: usize,
    pub free_dim: usize,
    pub sampled: usize,
    pub passed: usize,
    pub worst_margin: f64,
}

impl CoverReportEntry {
    pub fn is_empty_region(&self) -> bool {
        self.sampled == 0
    }

    pub fn pass_rate(&self) -> Option<f64> {
        (self.sampled > 0).then(|| self.passed as f64 / self.sampled as f64)
    }

    pub fn to_line(&self) -> String {
        let alphas: Vec<String> = self.alphas.iter().map(usize::to_string).collect();
        let verdict = match self.pass_rate() {
            None => "region empty (no feasible sample)".to_string(),
            Some(rate) => format!(
                "{}/{} points verified ({:.1}%), worst margin {:.3e}",
                self.passed,
                self.sampled,
                rate * 100.0,
                self.worst_margin
            ),
        };
        format!(
            "class {} alphas {{{}}}: {} equations, free dimension {}, {}",
            self.class,
            alphas.join(","),
            self.equations,
            self.free_dim,
            verdict
        )
    }
}

/// Solves, samples and verifies the piece for `class` tied with `alphas` on `layer`.
pub fn verify_cover(
    net: &Network<f64>,
    class: usize,
    alphas: &[usize],
    layer: usize,
    sampling: &SampleConfig,
    tol: f64,
) -> Result<CoverReportEntry> {
    let sol = relu_cover_solve(net, class, alphas, layer)?;
    let report = sample_boundary(&sol, sampling);
    let mut passed = 0;
    let mut worst = 0.0f64;
    for p in &report.points {
        let check = verify_ambiguity(net, p, tol);
        passed += usize::from(check.passed);
        worst = worst.max(check.worst_margin);
    }
    Ok(CoverReportEntry {
        class,
        alphas: sol.alphas.clone(),
        equations: sol.equation_count(),
        free_dim: sol.free_dim,
        sampled: report.points.len(),
        passed,
        worst_margin: worst,
    })
}

/// Verifies every single-class piece `{α}` of class `class`.
pub fn verify_class_covers(
    net: &Network<f64>,
    class: usize,
    layer: usize,
    sampling: &SampleConfig,
    tol: f64,
) -> Result<Vec<CoverReportEntry>> {
    if class >= net.classes() {
        return Err(SemialgebraicError::InvalidClass {
            class,
            classes: net.classes(),
        });
    }
    (0..net.classes())
        .filter(|&a| a != class)
        .map(|a| verify_cover(net, class, &[a], layer, sampling, tol))
        .collect()
}

pub fn cover_report_text(entries: &[CoverReportEntry]) -> String {
    entries.iter().map(|e| e.to_line() + "\n").collect()
}
