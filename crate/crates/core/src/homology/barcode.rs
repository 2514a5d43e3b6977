use std::fmt;

use super::reduce::PersistencePair;
use super::{Filtration, HomologyError, Result};
use crate::scalar::{cmp_finite, Scalar};

/// End of a persistence interval. Essential classes never die.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Death<T> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> Death<T> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Death::Infinite)
    }

    /// `true` iff `radius` lies strictly before this death.
    pub fn after(&self, radius: T) -> bool {
        match *self {
            Death::Finite(d) => radius < d,
            Death::Infinite => true,
        }
    }

    pub fn finite(&self) -> Option<T> {
        match *self {
            Death::Finite(d) => Some(d),
            Death::Infinite => None,
        }
    }
}

/// Half-open interval `[birth, death)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    pub birth: T,
    pub death: Death<T>,
}

impl<T: Scalar> Interval<T> {
    pub fn contains(&self, radius: T) -> bool {
        self.birth <= radius && self.death.after(radius)
    }

    /// `death - birth`, or `None` for an essential class.
    pub fn length(&self) -> Option<T> {
        self.death.finite().map(|d| d - self.birth)
    }
}

/// Persistence intervals per homology dimension `0..=max_dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct Barcode<T> {
    intervals: Vec<Vec<Interval<T>>>,
    max_radius: T,
    simplex_count: usize,
    pair_count: usize,
    unpaired_count: usize,
}

impl<T: Scalar> Barcode<T> {
    pub(crate) fn from_pairs(filtration: &Filtration<T>, pairs: &[PersistencePair]) -> Self {
        let simplices = filtration.simplices();
        let mut intervals = vec![Vec::new(); filtration.max_dim() + 1];
        let mut pair_count = 0;
        let mut unpaired_count = 0;
        for p in pairs {
            let birth = simplices[p.birth].birth();
            let death = match p.death {
                Some(d) => {
                    pair_count += 1;
                    let death = simplices[d].birth();
                    if death == birth {
                        continue;
                    }
                    Death::Finite(death)
                }
                None => {
                    unpaired_count += 1;
                    Death::Infinite
                }
            };
            if let Some(list) = intervals.get_mut(p.dim) {
                list.push(Interval { birth, death });
            }
        }
        for list in &mut intervals {
            sort_intervals(list);
        }
        Self {
            intervals,
            max_radius: filtration.max_radius(),
            simplex_count: filtration.len(),
            pair_count,
            unpaired_count,
        }
    }

    /// Assembles a barcode from already-computed intervals (e.g. parsed from text).
    pub fn from_intervals(mut intervals: Vec<Vec<Interval<T>>>, max_radius: T) -> Self {
        for list in &mut intervals {
            sort_intervals(list);
        }
        Self {
            intervals,
            max_radius,
            simplex_count: 0,
            pair_count: 0,
            unpaired_count: 0,
        }
    }

    pub fn max_dim(&self) -> usize {
        self.intervals.len() - 1
    }

    pub fn max_radius(&self) -> T {
        self.max_radius
    }

    /// Intervals of one dimension, sorted by birth and then longest first. Empty for
    /// dimensions above `max_dim`.
    pub fn intervals(&self, dim: usize) -> &[Interval<T>] {
        self.intervals.get(dim).map_or(&[], Vec::as_slice)
    }

    /// Reduction bookkeeping: `(simplices, pairs incl. zero-length, unpaired simplices)`.
    /// For a barcode computed from a filtration, `2 * pairs + unpaired == simplices`.
    pub fn reduction_counts(&self) -> (usize, usize, usize) {
        (self.simplex_count, self.pair_count, self.unpaired_count)
    }

    /// Whether a query at `radius` is inside the computed range.
    pub fn covers_radius(&self, radius: T) -> bool {
        radius <= self.max_radius
    }

    /// One interval per line as `dim,birth,death`, `inf` for essential classes, numbers
    /// with nine significant digits.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (dim, list) in self.intervals.iter().enumerate() {
            for iv in list {
                let death = match iv.death {
                    Death::Finite(d) => format_significant(d.as_f64(), 9),
                    Death::Infinite => "inf".to_string(),
                };
                out.push_str(&format!(
                    "{dim},{},{death}\n",
                    format_significant(iv.birth.as_f64(), 9)
                ));
            }
        }
        out
    }

    /// Parses the text format back into per-dimension intervals.
    pub fn parse_text(text: &str, max_radius: T) -> Result<Self> {
        let mut intervals: Vec<Vec<Interval<T>>> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let err = |reason: &str| HomologyError::BarcodeParse {
                line: i + 1,
                reason: reason.to_string(),
            };
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(err("expected dim,birth,death"));
            }
            let dim: usize = fields[0].parse().map_err(|_| err("bad dimension"))?;
            let birth: f64 = fields[1].parse().map_err(|_| err("bad birth"))?;
            let death = match fields[2] {
                "inf" => Death::Infinite,
                s => Death::Finite(T::lit(s.parse::<f64>().map_err(|_| err("bad death"))?)),
            };
            if intervals.len() <= dim {
                intervals.resize(dim + 1, Vec::new());
            }
            intervals[dim].push(Interval {
                birth: T::lit(birth),
                death,
            });
        }
        if intervals.is_empty() {
            intervals.push(Vec::new());
        }
        Ok(Self::from_intervals(intervals, max_radius))
    }
}

fn sort_intervals<T: Scalar>(list: &mut [Interval<T>]) {
    list.sort_by(|a, b| {
        cmp_finite(&a.birth, &b.birth).then_with(|| match (a.death, b.death) {
            (Death::Infinite, Death::Infinite) => std::cmp::Ordering::Equal,
            (Death::Infinite, _) => std::cmp::Ordering::Less,
            (_, Death::Infinite) => std::cmp::Ordering::Greater,
            (Death::Finite(x), Death::Finite(y)) => cmp_finite(&y, &x),
        })
    });
}

impl<T: Scalar> fmt::Display for Barcode<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Number of intervals of dimension `dim` with `birth <= radius < death`.
pub fn betti_at<T: Scalar>(barcode: &Barcode<T>, dim: usize, radius: T) -> usize {
    barcode
        .intervals(dim)
        .iter()
        .filter(|iv| iv.contains(radius))
        .count()
}

/// `%g`-style rendering: `sig` significant digits, trailing zeros removed, exponent
/// notation outside `1e-4 <= |x| < 10^sig`.
pub fn format_significant(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", sig.saturating_sub(1), x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(2f64.sqrt(), 9), "1.41421356");
        assert_eq!(format_significant(1.0, 9), "1");
        assert_eq!(format_significant(0.0, 9), "0");
        assert_eq!(format_significant(0.5, 9), "0.5");
        assert_eq!(format_significant(123456789.0, 9), "123456789");
        assert_eq!(format_significant(1234567890.0, 9), "1.23456789e+09");
        assert_eq!(format_significant(1e-5, 9), "1e-05");
        assert_eq!(format_significant(0.000123, 9), "0.000123");
        assert_eq!(format_significant(-2.5, 9), "-2.5");
    }

    #[test]
    fn betti_half_open() {
        let bars = Barcode::from_intervals(
            vec![vec![
                Interval { birth: 0.0, death: Death::Infinite },
                Interval { birth: 0.0, death: Death::Finite(1.0) },
            ]],
            2.0,
        );
        assert_eq!(betti_at(&bars, 0, 0.0), 2);
        assert_eq!(betti_at(&bars, 0, 0.999), 2);
        assert_eq!(betti_at(&bars, 0, 1.0), 1);
        assert_eq!(betti_at(&bars, 1, 0.5), 0);
    }

    #[test]
    fn text_round_trip() {
        let bars = Barcode::from_intervals(
            vec![
                vec![
                    Interval { birth: 0.0, death: Death::Infinite },
                    Interval { birth: 0.0, death: Death::Finite(1.0) },
                ],
                vec![Interval { birth: 1.0, death: Death::Finite(1.5) }],
            ],
            2.0,
        );
        let text = bars.to_text();
        assert_eq!(text, "0,0,inf\n0,0,1\n1,1,1.5\n");
        let back = Barcode::<f64>::parse_text(&text, 2.0).unwrap();
        assert_eq!(back, bars);
    }

    #[test]
    fn parse_errors_name_line() {
        let err = Barcode::<f64>::parse_text("0,0,inf\n0,zero,1\n", 1.0).unwrap_err();
        assert!(matches!(err, HomologyError::BarcodeParse { line: 2, .. }));
    }
}
