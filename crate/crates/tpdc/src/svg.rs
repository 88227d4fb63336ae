//! Self-contained SVG scatter/curve plots with error bars.
//!
//! Rendering is a pure function of the plot data (no timestamps, no
//! environment lookups), so emitted files are byte-stable and suitable
//! for golden-file comparison.

use crate::error::{PipelineError, Result};
use std::fmt::Write as _;
use std::path::Path;

/// Joint axis scaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotScale {
    Linear,
    LogLog,
}

/// Titles and scaling of a plot.
#[derive(Debug, Clone)]
pub struct AxesSpec {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub scale: PlotScale,
}

/// One measured point with its error-bar extents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBarPoint {
    pub x: f64,
    pub x_lo: f64,
    pub x_hi: f64,
    pub y: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

/// Everything one plot shows: error-barred markers and a model curve.
#[derive(Debug, Clone)]
pub struct PlotData {
    pub axes: AxesSpec,
    pub points: Vec<ErrorBarPoint>,
    /// Model curve samples in data coordinates.
    pub curve: Vec<(f64, f64)>,
    pub measured_label: String,
    pub model_label: String,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 42.0;
const MARGIN_BOTTOM: f64 = 54.0;

struct AxisRange {
    min: f64,
    max: f64,
    log: bool,
}

impl AxisRange {
    fn new(values: &[f64], log: bool, axis: &str, plot: &PlotData) -> Result<Self> {
        if log {
            // Point the finger at the first non-positive row.
            for (i, p) in plot.points.iter().enumerate() {
                let bad = if axis == "x" {
                    [p.x, p.x_lo, p.x_hi].into_iter().any(|v| v <= 0.0)
                } else {
                    [p.y, p.y_lo, p.y_hi].into_iter().any(|v| v <= 0.0)
                };
                if bad {
                    return Err(PipelineError::DegenerateRange(format!(
                        "log-scale {axis} axis cannot show row {i} (non-positive value)"
                    )));
                }
            }
            if values.iter().any(|&v| v <= 0.0) {
                return Err(PipelineError::DegenerateRange(format!(
                    "log-scale {axis} axis received a non-positive curve value"
                )));
            }
        }
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for &v in values {
            min = min.min(v);
            max = max.max(v);
        }
        if !(min.is_finite() && max.is_finite()) || min == max {
            return Err(PipelineError::DegenerateRange(format!(
                "{axis} axis has zero range (min = max = {min})"
            )));
        }
        // Pad 5% so markers do not sit on the frame.
        if log {
            let pad = (max / min).powf(0.05);
            Ok(AxisRange {
                min: min / pad,
                max: max * pad,
                log,
            })
        } else {
            let pad = 0.05 * (max - min);
            Ok(AxisRange {
                min: min - pad,
                max: max + pad,
                log,
            })
        }
    }

    /// Normalized position of `v` in [0, 1].
    fn unit(&self, v: f64) -> f64 {
        if self.log {
            (v.ln() - self.min.ln()) / (self.max.ln() - self.min.ln())
        } else {
            (v - self.min) / (self.max - self.min)
        }
    }

    /// 5 tick values across the range.
    fn ticks(&self) -> [f64; 5] {
        let mut out = [0.0; 5];
        for (i, slot) in out.iter_mut().enumerate() {
            let t = i as f64 / 4.0;
            *slot = if self.log {
                (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp()
            } else {
                self.min + t * (self.max - self.min)
            };
        }
        out
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn tick_label(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 {
        "0".to_string()
    } else if (0.01..10_000.0).contains(&a) {
        format!("{v:.3}")
    } else {
        format!("{v:.2e}")
    }
}

/// Render the plot as an SVG document.
pub fn render_svg(plot: &PlotData) -> Result<String> {
    if plot.points.is_empty() {
        return Err(PipelineError::Config(
            "plot needs at least one data row".to_string(),
        ));
    }
    let log = plot.axes.scale == PlotScale::LogLog;

    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for p in &plot.points {
        xs.extend([p.x, p.x_lo, p.x_hi]);
        ys.extend([p.y, p.y_lo, p.y_hi]);
    }
    for &(x, y) in &plot.curve {
        xs.push(x);
        ys.push(y);
    }
    let x_range = AxisRange::new(&xs, log, "x", plot)?;
    let y_range = AxisRange::new(&ys, log, "y", plot)?;

    let px = |v: f64| MARGIN_LEFT + x_range.unit(v) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT);
    let py = |v: f64| HEIGHT - MARGIN_BOTTOM - y_range.unit(v) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM);

    let mut s = String::with_capacity(16 * 1024);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);

    // Frame.
    let (x0, x1) = (MARGIN_LEFT, WIDTH - MARGIN_RIGHT);
    let (y0, y1) = (HEIGHT - MARGIN_BOTTOM, MARGIN_TOP);
    let _ = writeln!(
        s,
        r#"<rect x="{x0:.2}" y="{y1:.2}" width="{w:.2}" height="{h:.2}" fill="none" stroke="black" stroke-width="1"/>"#,
        w = x1 - x0,
        h = y0 - y1
    );

    // Ticks and labels.
    for v in x_range.ticks() {
        let x = px(v);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{yt:.2}" stroke="black" stroke-width="1"/>"#,
            yt = y0 + 5.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{yl:.2}" font-size="11" text-anchor="middle" font-family="sans-serif">{t}</text>"#,
            yl = y0 + 18.0,
            t = tick_label(v)
        );
    }
    for v in y_range.ticks() {
        let y = py(v);
        let _ = writeln!(
            s,
            r#"<line x1="{xt:.2}" y1="{y:.2}" x2="{x0:.2}" y2="{y:.2}" stroke="black" stroke-width="1"/>"#,
            xt = x0 - 5.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{xl:.2}" y="{yy:.2}" font-size="11" text-anchor="end" font-family="sans-serif">{t}</text>"#,
            xl = x0 - 8.0,
            yy = y + 4.0,
            t = tick_label(v)
        );
    }

    // Axis titles and plot title.
    let _ = writeln!(
        s,
        r#"<text x="{cx:.2}" y="{yb:.2}" font-size="13" text-anchor="middle" font-family="sans-serif">{t}</text>"#,
        cx = (x0 + x1) / 2.0,
        yb = HEIGHT - 14.0,
        t = escape(&plot.axes.x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{cy:.2}" font-size="13" text-anchor="middle" font-family="sans-serif" transform="rotate(-90 18 {cy:.2})">{t}</text>"#,
        cy = (y0 + y1) / 2.0,
        t = escape(&plot.axes.y_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="{cx:.2}" y="24" font-size="15" text-anchor="middle" font-family="sans-serif">{t}</text>"#,
        cx = WIDTH / 2.0,
        t = escape(&plot.axes.title)
    );

    // Model curve.
    if !plot.curve.is_empty() {
        let mut path = String::new();
        for (i, &(x, y)) in plot.curve.iter().enumerate() {
            let _ = write!(
                path,
                "{}{:.2},{:.2}",
                if i == 0 { "" } else { " " },
                px(x),
                py(y)
            );
        }
        let _ = writeln!(
            s,
            r##"<polyline points="{path}" fill="none" stroke="#d95f02" stroke-width="1.8"/>"##
        );
    }

    // Error bars and markers.
    for p in &plot.points {
        let (x, y) = (px(p.x), py(p.y));
        let (ylo, yhi) = (py(p.y_lo), py(p.y_hi));
        let (xlo, xhi) = (px(p.x_lo), px(p.x_hi));
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{ylo:.2}" x2="{x:.2}" y2="{yhi:.2}" stroke="#1f77b4" stroke-width="1.2"/>"##
        );
        let _ = writeln!(
            s,
            r##"<line x1="{xl:.2}" y1="{ylo:.2}" x2="{xr:.2}" y2="{ylo:.2}" stroke="#1f77b4" stroke-width="1.2"/>"##,
            xl = x - 3.0,
            xr = x + 3.0
        );
        let _ = writeln!(
            s,
            r##"<line x1="{xl:.2}" y1="{yhi:.2}" x2="{xr:.2}" y2="{yhi:.2}" stroke="#1f77b4" stroke-width="1.2"/>"##,
            xl = x - 3.0,
            xr = x + 3.0
        );
        let _ = writeln!(
            s,
            r##"<line x1="{xlo:.2}" y1="{y:.2}" x2="{xhi:.2}" y2="{y:.2}" stroke="#1f77b4" stroke-width="1.2"/>"##
        );
        let _ = writeln!(
            s,
            r##"<circle cx="{x:.2}" cy="{y:.2}" r="3.2" fill="#1f77b4"/>"##
        );
    }

    // Legend.
    let lx = x0 + 12.0;
    let ly = y1 + 16.0;
    let _ = writeln!(
        s,
        r##"<circle cx="{lx:.2}" cy="{ly:.2}" r="3.2" fill="#1f77b4"/>"##
    );
    let _ = writeln!(
        s,
        r#"<text x="{tx:.2}" y="{ty:.2}" font-size="12" font-family="sans-serif">{t}</text>"#,
        tx = lx + 10.0,
        ty = ly + 4.0,
        t = escape(&plot.measured_label)
    );
    let _ = writeln!(
        s,
        r##"<line x1="{x1l:.2}" y1="{y2l:.2}" x2="{x2l:.2}" y2="{y2l:.2}" stroke="#d95f02" stroke-width="1.8"/>"##,
        x1l = lx - 5.0,
        x2l = lx + 5.0,
        y2l = ly + 18.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{tx:.2}" y="{ty:.2}" font-size="12" font-family="sans-serif">{t}</text>"#,
        tx = lx + 10.0,
        ty = ly + 22.0,
        t = escape(&plot.model_label)
    );

    s.push_str("</svg>\n");
    Ok(s)
}

/// Render and write the plot (whole-file atomic).
pub fn emit_svg_plot(plot: &PlotData, path: &Path) -> Result<()> {
    let doc = render_svg(plot)?;
    crate::atomic_write(path, doc.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_plot(scale: PlotScale) -> PlotData {
        PlotData {
            axes: AxesSpec {
                title: "demo".into(),
                x_label: "x".into(),
                y_label: "y".into(),
                scale,
            },
            points: (1..=5)
                .map(|i| {
                    let x = i as f64;
                    ErrorBarPoint {
                        x,
                        x_lo: x * 0.9,
                        x_hi: x * 1.1,
                        y: x * x,
                        y_lo: x * x * 0.8,
                        y_hi: x * x * 1.2,
                    }
                })
                .collect(),
            curve: (0..100)
                .map(|i| {
                    let x = 1.0 + 4.0 * i as f64 / 99.0;
                    (x, x * x)
                })
                .collect(),
            measured_label: "measured".into(),
            model_label: "model".into(),
        }
    }

    /// Minimal well-formedness scan: one root element, balanced tags,
    /// no stray '<' or '>'.
    fn assert_well_formed(doc: &str) {
        let mut stack: Vec<String> = Vec::new();
        let mut roots = 0;
        let mut rest = doc;
        while let Some(start) = rest.find('<') {
            let after = &rest[start + 1..];
            let end = after.find('>').expect("unterminated tag");
            let tag = &after[..end];
            if let Some(name) = tag.strip_prefix('/') {
                let open = stack.pop().unwrap_or_else(|| panic!("unbalanced </{name}>"));
                assert_eq!(open, name, "mismatched closing tag");
            } else if !tag.ends_with('/') && !tag.starts_with('?') && !tag.starts_with('!') {
                let name: String = tag
                    .chars()
                    .take_while(|c| !c.is_whitespace() && *c != '>')
                    .collect();
                if stack.is_empty() {
                    roots += 1;
                }
                stack.push(name);
            }
            rest = &after[end + 1..];
        }
        assert!(stack.is_empty(), "unclosed tags: {stack:?}");
        assert_eq!(roots, 1, "expected a single root element");
    }

    #[test]
    fn renders_markers_curve_and_legend() {
        let doc = render_svg(&sample_plot(PlotScale::Linear)).unwrap();
        assert_eq!(doc.matches("<circle").count(), 5 + 1); // markers + legend
        assert_eq!(doc.matches("<polyline").count(), 1);
        assert!(doc.contains("measured"));
        assert!(doc.contains("model"));
        assert_well_formed(&doc);
    }

    #[test]
    fn log_scale_renders_and_is_well_formed() {
        let doc = render_svg(&sample_plot(PlotScale::LogLog)).unwrap();
        assert_well_formed(&doc);
    }

    #[test]
    fn log_scale_names_the_offending_row() {
        let mut plot = sample_plot(PlotScale::LogLog);
        plot.points[2].y_lo = 0.0;
        match render_svg(&plot) {
            Err(PipelineError::DegenerateRange(msg)) => assert!(msg.contains("row 2"), "{msg}"),
            other => panic!("expected degenerate range, got {other:?}"),
        }
    }

    #[test]
    fn zero_range_axis_is_rejected() {
        let mut plot = sample_plot(PlotScale::Linear);
        for p in &mut plot.points {
            p.x = 1.0;
            p.x_lo = 1.0;
            p.x_hi = 1.0;
        }
        plot.curve = vec![(1.0, 1.0), (1.0, 4.0)];
        assert!(matches!(
            render_svg(&plot),
            Err(PipelineError::DegenerateRange(_))
        ));
    }

    #[test]
    fn empty_plot_is_rejected() {
        let mut plot = sample_plot(PlotScale::Linear);
        plot.points.clear();
        assert!(render_svg(&plot).is_err());
    }

    #[test]
    fn rendering_is_deterministic() {
        let plot = sample_plot(PlotScale::Linear);
        assert_eq!(render_svg(&plot).unwrap(), render_svg(&plot).unwrap());
    }

    #[test]
    fn labels_are_escaped() {
        let mut plot = sample_plot(PlotScale::Linear);
        plot.axes.title = "a < b & c".into();
        let doc = render_svg(&plot).unwrap();
        assert!(doc.contains("a &lt; b &amp; c"));
        assert_well_formed(&doc);
    }
}
