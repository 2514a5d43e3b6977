//! Minimal SVG emitters for barcodes and x/y series.

use std::fmt::Write;

use super::Barcode;
use crate::scalar::Scalar;

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 40.0;
const BAR_HEIGHT: f64 = 4.0;
const BAR_GAP: f64 = 2.0;

/// Bar colours by homology dimension: red for `b_0`, blue for `b_1`.
pub fn dimension_colour(dim: usize) -> &'static str {
    match dim {
        0 => "red",
        1 => "blue",
        _ => "green",
    }
}

/// Horizontal bars over the radius axis; essential bars run to the right edge.
pub fn barcode_svg<T: Scalar>(barcode: &Barcode<T>, title: &str) -> String {
    let max_r = barcode.max_radius().as_f64().max(f64::MIN_POSITIVE);
    let bars: Vec<(usize, f64, Option<f64>)> = (0..=barcode.max_dim())
        .flat_map(|dim| {
            barcode
                .intervals(dim)
                .iter()
                .map(move |iv| (dim, iv.birth.as_f64(), iv.death.finite().map(T::as_f64)))
        })
        .collect();
    let plot_w = WIDTH - 2.0 * MARGIN;
    let height = 2.0 * MARGIN + bars.len() as f64 * (BAR_HEIGHT + BAR_GAP);
    let x = |r: f64| MARGIN + plot_w * (r / max_r).clamp(0.0, 1.0);

    let mut svg = header(WIDTH, height);
    let _ = writeln!(
        svg,
        r#"<text x="{MARGIN}" y="{}" font-size="14">{}</text>"#,
        MARGIN * 0.6,
        escape(title)
    );
    for (row, (dim, birth, death)) in bars.iter().enumerate() {
        let y = MARGIN + row as f64 * (BAR_HEIGHT + BAR_GAP);
        let end = death.map_or(WIDTH - MARGIN, x);
        let _ = writeln!(
            svg,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{BAR_HEIGHT}" fill="{}" class="dim{dim}{}"/>"#,
            x(*birth),
            y,
            (end - x(*birth)).max(0.5),
            dimension_colour(*dim),
            if death.is_none() { " essential" } else { "" }
        );
    }
    axis(&mut svg, height, 0.0, max_r, "radius");
    svg.push_str("</svg>\n");
    svg
}

/// `(label, colour, points)` of one plotted line.
pub type Series<'a> = (&'a str, &'a str, Vec<(f64, f64)>);

/// One line per series over a shared x axis.
pub fn line_chart_svg(title: &str, x_label: &str, series: &[Series<'_>]) -> String {
    let height = 360.0;
    let all: Vec<(f64, f64)> = series.iter().flat_map(|s| s.2.iter().copied()).collect();
    let (x_lo, x_hi) = bounds(all.iter().map(|p| p.0));
    let mut svg = header(WIDTH, height);
    let _ = writeln!(
        svg,
        r#"<text x="{MARGIN}" y="{}" font-size="14">{}</text>"#,
        MARGIN * 0.6,
        escape(title)
    );
    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = height - 2.0 * MARGIN;
    for (k, (label, colour, points)) in series.iter().enumerate() {
        // Each series is scaled to its own range so differently-scaled curves share a plot.
        let (y_lo, y_hi) = bounds(points.iter().map(|p| p.1));
        let coords: Vec<String> = points
            .iter()
            .map(|&(px, py)| {
                let sx = MARGIN + plot_w * (px - x_lo) / (x_hi - x_lo);
                let sy = height - MARGIN - plot_h * (py - y_lo) / (y_hi - y_lo);
                format!("{sx:.2},{sy:.2}")
            })
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="2" points="{}"/>"#,
            coords.join(" ")
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-size="12" fill="{colour}">{} [{:.3}, {:.3}]</text>"#,
            WIDTH - MARGIN - 200.0,
            MARGIN + 14.0 * (k as f64 + 1.0),
            escape(label),
            y_lo,
            y_hi
        );
    }
    axis(&mut svg, height, x_lo, x_hi, x_label);
    svg.push_str("</svg>\n");
    svg
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

fn header(width: f64, height: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    )
}

fn axis(svg: &mut String, height: f64, lo: f64, hi: f64, label: &str) {
    let y = height - MARGIN + 8.0;
    let _ = writeln!(
        svg,
        r#"<line x1="{MARGIN}" y1="{y}" x2="{}" y2="{y}" stroke="black"/>"#,
        WIDTH - MARGIN
    );
    let _ = writeln!(
        svg,
        r#"<text x="{MARGIN}" y="{}" font-size="11">{lo:.3}</text><text x="{}" y="{}" font-size="11">{hi:.3}</text><text x="{}" y="{}" font-size="11">{}</text>"#,
        y + 14.0,
        WIDTH - MARGIN - 30.0,
        y + 14.0,
        WIDTH / 2.0,
        y + 14.0,
        escape(label)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
