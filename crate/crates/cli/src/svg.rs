//! Minimal SVG line charts.

use std::fmt::Write as _;

use crate::format::general;

pub struct Series<'a> {
    pub title: &'a str,
    pub x_label: &'a str,
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 640.0;
const PANEL: f64 = 260.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 36.0;
const BOTTOM: f64 = 44.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn span(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
        (a.min(v), b.max(v))
    });
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo <= 1e-12 * hi.abs().max(lo.abs()) {
        let pad = if lo == 0.0 { 1.0 } else { 0.05 * lo.abs() };
        (lo - pad, hi + pad)
    } else {
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    }
}

fn panel(out: &mut String, s: &Series, y0: f64) {
    let (x_min, x_max) = span(s.points.iter().map(|p| p.0));
    let (v_min, v_max) = span(s.points.iter().map(|p| p.1));
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = PANEL - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let py = |v: f64| y0 + TOP + (v_max - v) / (v_max - v_min) * plot_h;

    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" font-size="14" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        y0 + 22.0,
        escape(s.title)
    );
    let _ = writeln!(
        out,
        r##"<rect x="{LEFT}" y="{:.1}" width="{plot_w:.1}" height="{plot_h:.1}" fill="none" stroke="#444"/>"##,
        y0 + TOP
    );
    for k in 0..=4 {
        let v = v_min + (v_max - v_min) * k as f64 / 4.0;
        let y = py(v);
        let _ = writeln!(
            out,
            r##"<line x1="{:.1}" y1="{y:.1}" x2="{LEFT}" y2="{y:.1}" stroke="#444"/><text x="{:.1}" y="{:.1}" font-size="10" text-anchor="end">{}</text>"##,
            LEFT - 4.0,
            LEFT - 6.0,
            y + 3.0,
            general(v, 4)
        );
    }
    let mut ticks: Vec<f64> = s.points.iter().map(|p| p.0).collect();
    ticks.dedup();
    for x in ticks {
        let xp = px(x);
        let yb = y0 + TOP + plot_h;
        let _ = writeln!(
            out,
            r##"<line x1="{xp:.1}" y1="{yb:.1}" x2="{xp:.1}" y2="{:.1}" stroke="#444"/><text x="{xp:.1}" y="{:.1}" font-size="10" text-anchor="middle">{}</text>"##,
            yb + 4.0,
            yb + 16.0,
            general(x, 4)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" font-size="11" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        y0 + PANEL - 8.0,
        escape(s.x_label)
    );
    let path: Vec<String> = s
        .points
        .iter()
        .map(|&(x, v)| format!("{:.2},{:.2}", px(x), py(v)))
        .collect();
    let _ = writeln!(
        out,
        r##"<polyline points="{}" fill="none" stroke="#1f5fa8" stroke-width="2"/>"##,
        path.join(" ")
    );
    for p in &path {
        let (x, y) = p.split_once(',').unwrap();
        let _ = writeln!(out, r##"<circle cx="{x}" cy="{y}" r="3" fill="#1f5fa8"/>"##);
    }
}

/// Vertically stacked charts, one per series.
pub fn render(series: &[Series]) -> String {
    let height = PANEL * series.len() as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, s) in series.iter().enumerate() {
        panel(&mut out, s, PANEL * i as f64);
    }
    out.push_str("</svg>\n");
    out
}
