use super::report::bound_at;
use super::{ArchitectureSpec, BigCount, BoundsError, Result};

/// Which width varies when searching for a minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreeWidth {
    /// A single hidden layer `1..l`.
    Layer(usize),
    /// Every hidden layer together (equal-width sweeps).
    AllHidden,
}

fn instantiate(template: &ArchitectureSpec, free: FreeWidth, width: usize) -> Result<ArchitectureSpec> {
    match free {
        FreeWidth::Layer(i) => template.with_width(i, width),
        FreeWidth::AllHidden => {
            let mut widths = template.widths().to_vec();
            let l = widths.len() - 1;
            for w in &mut widths[1..l] {
                *w = width;
            }
            ArchitectureSpec::new(widths, template.activation())
        }
    }
}

/// Smallest width `w <= cap` whose bound on `b_k` at `layer` reaches `target`.
///
/// Widths are scanned upward from 1; a decrease between consecutive widths is
/// reported as [`BoundsError::NonMonotone`] because the search assumes monotonicity.
pub fn min_width_for(
    template: &ArchitectureSpec,
    free: FreeWidth,
    layer: usize,
    k: usize,
    target: &BigCount,
    cap: usize,
) -> Result<usize> {
    let l = template.depth();
    match free {
        FreeWidth::Layer(i) if i == 0 || i >= l => return Err(BoundsError::InvalidFreeWidth(i)),
        FreeWidth::AllHidden if l < 2 => return Err(BoundsError::InvalidFreeWidth(1)),
        _ => {}
    }
    if cap == 0 {
        return Err(BoundsError::NonPositive { name: "width cap" });
    }
    let mut previous: Option<BigCount> = None;
    for w in 1..=cap {
        let bound = bound_at(&instantiate(template, free, w)?, k, layer)?;
        if let Some(prev) = &previous {
            if &bound < prev {
                return Err(BoundsError::NonMonotone {
                    width: w - 1,
                    next: w,
                });
            }
        }
        if &bound >= target {
            return Ok(w);
        }
        previous = Some(bound);
    }
    Err(BoundsError::Unreachable {
        cap,
        bound_at_cap: previous.expect("cap >= 1"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Activation;

    fn relu_template() -> ArchitectureSpec {
        ArchitectureSpec::new(vec![4, 1, 2], Activation::Relu).unwrap()
    }

    #[test]
    fn smallest_width_reaching_target() {
        let w = min_width_for(&relu_template(), FreeWidth::Layer(1), 1, 0, &BigCount::from(8), 16);
        assert_eq!(w.unwrap(), 2);
        let w = min_width_for(&relu_template(), FreeWidth::Layer(1), 1, 0, &BigCount::from(9), 16);
        assert_eq!(w.unwrap(), 3);
    }

    #[test]
    fn target_one_needs_width_one() {
        let poly = ArchitectureSpec::new(vec![3, 3, 3, 3], Activation::Polynomial { degree: 2 }).unwrap();
        for arch in [relu_template(), poly] {
            let w = min_width_for(&arch, FreeWidth::AllHidden, 1, 0, &BigCount::from(1), 8);
            assert_eq!(w.unwrap(), 1);
        }
    }

    #[test]
    fn unreachable_reports_bound_at_cap() {
        let err = min_width_for(
            &relu_template(),
            FreeWidth::Layer(1),
            1,
            0,
            &BigCount::from(1_000_000_000_000),
            4,
        )
        .unwrap_err();
        assert_eq!(
            err,
            BoundsError::Unreachable {
                cap: 4,
                bound_at_cap: BigCount::from(80)
            }
        );
    }

    #[test]
    fn free_width_must_be_hidden() {
        let err = min_width_for(&relu_template(), FreeWidth::Layer(0), 1, 0, &BigCount::from(1), 4);
        assert_eq!(err.unwrap_err(), BoundsError::InvalidFreeWidth(0));
    }
}
