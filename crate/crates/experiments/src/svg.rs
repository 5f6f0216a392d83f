//! Minimal standalone SVG line charts: log-scaled x axis, linear y axis.
//!
//! Output depends only on the input values; every coordinate is printed
//! with fixed precision so identical input gives identical bytes.

use std::fmt::Write as _;

use crate::csv_io::SweepRow;
use crate::error::{ExpError, Result};

const PALETTE: [&str; 8] =
    ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"];

#[derive(Debug, Clone, PartialEq)]
pub struct SvgStyle {
    pub width: f64,
    pub height: f64,
    pub title: String,
    pub x_label: String,
    pub y_label: String,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            width: 720.0,
            height: 480.0,
            title: String::new(),
            x_label: "n".into(),
            y_label: "nats".into(),
        }
    }
}

/// A named series sharing the chart's x values.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub values: Vec<f64>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Render series over positive x values (log axis).
pub fn render_chart(xs: &[f64], series: &[Series], style: &SvgStyle) -> Result<String> {
    if xs.is_empty() || series.is_empty() {
        return Err(ExpError::Config("cannot plot empty data".into()));
    }
    if xs.iter().any(|x| !(*x > 0.0) || !x.is_finite()) {
        return Err(ExpError::Config("x values must be positive for a log axis".into()));
    }
    if series.iter().any(|s| s.values.len() != xs.len()) {
        return Err(ExpError::Config("series length differs from x length".into()));
    }

    let (left, right, top, bottom) = (70.0, 180.0, 40.0, 50.0);
    let plot_w = style.width - left - right;
    let plot_h = style.height - top - bottom;

    let lx: Vec<f64> = xs.iter().map(|x| x.log10()).collect();
    let (mut x_lo, mut x_hi) = lx.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    if x_hi - x_lo < 1e-12 {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    let finite = series.iter().flat_map(|s| s.values.iter()).filter(|v| v.is_finite());
    let (mut y_lo, mut y_hi) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    if !y_lo.is_finite() {
        return Err(ExpError::Config("no finite values to plot".into()));
    }
    if y_hi - y_lo < 1e-12 {
        y_lo -= 1.0;
        y_hi += 1.0;
    } else {
        let pad = 0.05 * (y_hi - y_lo);
        y_lo -= pad;
        y_hi += pad;
    }
    let px = |v: f64| left + (v - x_lo) / (x_hi - x_lo) * plot_w;
    let py = |v: f64| top + (y_hi - v) / (y_hi - y_lo) * plot_h;

    let mut out = String::new();
    let (w, h) = (style.width, style.height);
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}" font-family="sans-serif" font-size="12">"#).unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{w:.0}" height="{h:.0}" fill="white"/>"#).unwrap();
    if !style.title.is_empty() {
        writeln!(out, r#"<text x="{:.2}" y="20" text-anchor="middle" font-size="14">{}</text>"#, left + plot_w / 2.0, escape(&style.title)).unwrap();
    }

    // axes
    let (x0, x1, y0, y1) = (left, left + plot_w, top + plot_h, top);
    writeln!(out, r#"<g stroke="black" stroke-width="1"><line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}"/><line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}"/></g>"#).unwrap();

    // decade ticks on x
    out.push_str("<g class=\"x-ticks\">\n");
    let mut k = x_lo.ceil() as i32;
    while k as f64 <= x_hi + 1e-9 {
        let x = px(k as f64);
        writeln!(out, r#"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">1e{k}</text>"#, y0 + 5.0, y0 + 18.0).unwrap();
        k += 1;
    }
    out.push_str("</g>\n");

    // five linear ticks on y
    out.push_str("<g class=\"y-ticks\">\n");
    for i in 0..=4 {
        let v = y_lo + (y_hi - y_lo) * i as f64 / 4.0;
        let y = py(v);
        writeln!(out, r#"<line x1="{:.2}" y1="{y:.2}" x2="{x0:.2}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{v:.3}</text>"#, x0 - 5.0, x0 - 8.0, y + 4.0).unwrap();
    }
    out.push_str("</g>\n");
    writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, left + plot_w / 2.0, h - 12.0, escape(&style.x_label)).unwrap();
    writeln!(out, r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#, top + plot_h / 2.0, top + plot_h / 2.0, escape(&style.y_label)).unwrap();

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<(f64, f64)> = lx
            .iter()
            .zip(&s.values)
            .filter(|(_, v)| v.is_finite())
            .map(|(&x, &v)| (px(x), py(v)))
            .collect();
        let label = escape(&s.label);
        if pts.len() >= 2 {
            let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
            writeln!(out, r#"<polyline class="series" data-label="{label}" fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, coords.join(" ")).unwrap();
        } else {
            for (x, y) in &pts {
                writeln!(out, r#"<circle class="marker" data-label="{label}" cx="{x:.2}" cy="{y:.2}" r="3" fill="{color}"/>"#).unwrap();
            }
        }
        let ly = top + 10.0 + 18.0 * i as f64;
        let lx0 = x1 + 15.0;
        writeln!(out, r#"<line x1="{lx0:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/><text class="legend" x="{:.2}" y="{:.2}">{label}</text>"#, lx0 + 20.0, lx0 + 26.0, ly + 4.0).unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Plot the named sweep columns against n.
pub fn emit_svg(rows: &[SweepRow], columns: &[&str], style: &SvgStyle) -> Result<String> {
    if rows.is_empty() {
        return Err(ExpError::Config("cannot plot an empty sweep (EmptyData)".into()));
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.report.n as f64).collect();
    let series = columns
        .iter()
        .map(|&c| {
            let values = rows
                .iter()
                .map(|r| r.column(c).ok_or_else(|| ExpError::Config(format!("unknown or empty column {c:?}"))))
                .collect::<Result<Vec<f64>>>()?;
            Ok(Series { label: c.to_string(), values })
        })
        .collect::<Result<Vec<_>>>()?;
    render_chart(&xs, &series, style)
}
