//! Static SVG line charts.

use std::fmt::Write as _;
use std::io::{self, Write};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 52.0;
const TICKS: usize = 5;
const DEGENERATE_PAD: f64 = 0.05;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn new(label: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Series {
            label: label.into(),
            points,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PlotError {
    #[error("nothing to plot")]
    NoSeries,
    #[error("series {0:?} needs at least two points")]
    TooFewPoints(String),
    #[error("series {0:?} has a non-finite coordinate")]
    NonFinite(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisRange {
    pub min: f64,
    pub max: f64,
}

impl AxisRange {
    fn of(values: impl Iterator<Item = f64>) -> AxisRange {
        let (min, max) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
        if min == max {
            AxisRange {
                min: min - DEGENERATE_PAD,
                max: max + DEGENERATE_PAD,
            }
        } else {
            AxisRange { min, max }
        }
    }

    fn scale(&self, v: f64, from: f64, to: f64) -> f64 {
        from + (v - self.min) / (self.max - self.min) * (to - from)
    }
}

fn check(series: &[Series]) -> Result<(), PlotError> {
    if series.is_empty() {
        return Err(PlotError::NoSeries);
    }
    for s in series {
        if s.points.len() < 2 {
            return Err(PlotError::TooFewPoints(s.label.clone()));
        }
        if s.points
            .iter()
            .any(|(x, y)| !x.is_finite() || !y.is_finite())
        {
            return Err(PlotError::NonFinite(s.label.clone()));
        }
    }
    Ok(())
}

/// Horizontal and vertical data ranges. An axis where every value is equal
/// is widened by 0.05 on each side.
pub fn axis_ranges(series: &[Series]) -> Result<(AxisRange, AxisRange), PlotError> {
    check(series)?;
    let xs = AxisRange::of(series.iter().flat_map(|s| s.points.iter().map(|p| p.0)));
    let ys = AxisRange::of(series.iter().flat_map(|s| s.points.iter().map(|p| p.1)));
    Ok((xs, ys))
}

fn tick_label(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Builds the document. Identical input gives identical bytes.
pub fn svg_document(series: &[Series], x_label: &str, y_label: &str) -> Result<String, PlotError> {
    let (xr, yr) = axis_ranges(series)?;
    let left = MARGIN_LEFT;
    let right = WIDTH - MARGIN_RIGHT;
    let top = MARGIN_TOP;
    let bottom = HEIGHT - MARGIN_BOTTOM;

    let mut doc = String::new();
    let w = &mut doc;
    // Writing to a String cannot fail.
    let _ = writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(
        w,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );

    // axes
    let _ = writeln!(
        w,
        r#"<g stroke="black" stroke-width="1"><line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}"/><line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}"/></g>"#
    );

    let _ = writeln!(w, r#"<g class="ticks">"#);
    for k in 0..TICKS {
        let frac = k as f64 / (TICKS - 1) as f64;
        let xv = xr.min + frac * (xr.max - xr.min);
        let px = xr.scale(xv, left, right);
        let _ = writeln!(
            w,
            r#"<line x1="{px:.2}" y1="{bottom}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            bottom + 4.0,
            bottom + 16.0,
            tick_label(xv)
        );
        let yv = yr.min + frac * (yr.max - yr.min);
        let py = yr.scale(yv, bottom, top);
        let _ = writeln!(
            w,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{left}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            left - 4.0,
            left - 6.0,
            py + 4.0,
            tick_label(yv)
        );
    }
    let _ = writeln!(w, "</g>");

    let _ = writeln!(
        w,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        (left + right) / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        w,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
        (top + bottom) / 2.0,
        (top + bottom) / 2.0,
        escape(y_label)
    );

    for (k, s) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| {
                format!(
                    "{:.2},{:.2}",
                    xr.scale(x, left, right),
                    yr.scale(y, bottom, top)
                )
            })
            .collect();
        let _ = writeln!(
            w,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            pts.join(" ")
        );
    }

    let _ = writeln!(w, r#"<g class="legend">"#);
    for (k, s) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let y = top + 10.0 + 18.0 * k as f64;
        let x = right + 14.0;
        let _ = writeln!(
            w,
            r#"<line x1="{x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}" stroke-width="3"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            x + 20.0,
            x + 26.0,
            y + 4.0,
            escape(&s.label)
        );
    }
    let _ = writeln!(w, "</g>");
    let _ = writeln!(w, "</svg>");
    Ok(doc)
}

/// Writes a standalone SVG 1.1 line chart. Returns the byte count.
pub fn render_svg_plot<W: Write>(
    series: &[Series],
    x_label: &str,
    y_label: &str,
    mut sink: W,
) -> Result<usize, PlotError> {
    let doc = svg_document(series, x_label, y_label)?;
    sink.write_all(doc.as_bytes())?;
    sink.flush()?;
    Ok(doc.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_series_one_polyline() {
        let s = [Series::new("x", vec![(0.0, 0.0), (1.0, 1.0)])];
        let doc = svg_document(&s, "t", "x").unwrap();
        assert_eq!(doc.matches("<polyline").count(), 1);
        assert!(doc.starts_with("<?xml"));
        assert!(doc.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn legend_entries() {
        let s: Vec<Series> = [1.0, 1.5, 2.0]
            .iter()
            .map(|v| Series::new(format!("Cg={v:?}"), vec![(0.0, *v), (1.0, v / 2.0)]))
            .collect();
        let doc = svg_document(&s, "t", "x").unwrap();
        assert_eq!(doc.matches("<polyline").count(), 3);
        for label in ["Cg=1.0", "Cg=1.5", "Cg=2.0"] {
            assert!(doc.contains(&format!(">{label}</text>")), "{label}");
        }
    }

    #[test]
    fn constant_series_widens_range() {
        let s = [Series::new("c", vec![(0.0, 0.5), (1.0, 0.5), (2.0, 0.5)])];
        let (xr, yr) = axis_ranges(&s).unwrap();
        assert_eq!((xr.min, xr.max), (0.0, 2.0));
        assert!((yr.min - 0.45).abs() < 1e-15 && (yr.max - 0.55).abs() < 1e-15);
        assert!(svg_document(&s, "t", "y").is_ok());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            svg_document(&[], "t", "y"),
            Err(PlotError::NoSeries)
        ));
        let short = [Series::new("a", vec![(0.0, 1.0)])];
        assert!(matches!(
            svg_document(&short, "t", "y"),
            Err(PlotError::TooFewPoints(_))
        ));
    }

    #[test]
    fn deterministic_and_escaped() {
        let s = [Series::new("a<b", vec![(0.0, 1.0), (2.0, 3.0)])];
        let a = svg_document(&s, "t & u", "y").unwrap();
        let b = svg_document(&s, "t & u", "y").unwrap();
        assert_eq!(a, b);
        assert!(a.contains("a&lt;b") && a.contains("t &amp; u"));
        let mut buf = Vec::new();
        let n = render_svg_plot(&s, "t & u", "y", &mut buf).unwrap();
        assert_eq!(n, buf.len());
        assert_eq!(buf, a.as_bytes());
    }
}
