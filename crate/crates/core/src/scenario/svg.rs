//! Line charts of sweep rows as standalone SVG files.

use super::SweepRow;
use crate::error::Result;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
/// Lower edge of the outage axis.
pub const OUTAGE_FLOOR: f64 = 1e-8;

const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];
const DASHES: [&str; 4] = ["", "8,4", "2,3", "10,3,2,3"];

/// Quantity on the vertical axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Capacity,
    Outage,
}

impl PlotKind {
    fn suffix(&self) -> &'static str {
        match self {
            PlotKind::Capacity => "capacity",
            PlotKind::Outage => "outage",
        }
    }
}

struct Series {
    alpha: f64,
    m: f64,
    points: Vec<(f64, f64)>,
}

fn same_panel(a: &SweepRow, b: &SweepRow) -> bool {
    a.band == b.band && a.d == b.d && a.p_t == b.p_t
}

fn series_of(rows: &[&SweepRow], kind: PlotKind) -> Vec<Series> {
    let mut out: Vec<Series> = Vec::new();
    for r in rows {
        let y = match kind {
            PlotKind::Capacity => r.capacity_bps,
            PlotKind::Outage => r.outage_ub,
        };
        match out.iter_mut().find(|s| s.alpha == r.alpha && s.m == r.m) {
            Some(s) => s.points.push((r.t_b, y)),
            None => out.push(Series { alpha: r.alpha, m: r.m, points: vec![(r.t_b, y)] }),
        }
    }
    for s in &mut out {
        s.points.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    out
}

fn rate_unit(max: f64) -> (f64, &'static str) {
    if max >= 1e6 {
        (1e6, "Mbps")
    } else if max >= 1e3 {
        (1e3, "Kbps")
    } else {
        (1.0, "bps")
    }
}

fn render(title: &str, kind: PlotKind, series: &[Series]) -> String {
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let xs = series.iter().flat_map(|s| s.points.iter().map(|p| p.0));
    let (x_min, x_max) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    let x_span = if x_max > x_min { x_max - x_min } else { 1.0 };
    let y_max_raw = series.iter().flat_map(|s| s.points.iter().map(|p| p.1)).fold(0f64, f64::max);
    let (scale, unit) = rate_unit(y_max_raw);
    let y_top = if y_max_raw > 0.0 { 1.05 * y_max_raw / scale } else { 1.0 };
    let px = |x: f64| LEFT + (x - x_min) / x_span * pw;
    let py = |y: f64| match kind {
        PlotKind::Capacity => TOP + ph * (1.0 - (y / scale) / y_top),
        PlotKind::Outage => {
            let lo = OUTAGE_FLOOR.log10();
            let v = y.clamp(OUTAGE_FLOOR, 1.0).log10();
            TOP + ph * (v / lo)
        }
    };

    let mut s = String::new();
    let w = &mut s;
    writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(w, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).unwrap();
    writeln!(w, r#"<text x="{:.1}" y="22" text-anchor="middle" font-size="14">{title}</text>"#, LEFT + pw / 2.0)
        .unwrap();

    for i in 0..=6 {
        let x = x_min + x_span * i as f64 / 6.0;
        let gx = px(x);
        writeln!(w, r##"<line x1="{gx:.2}" y1="{TOP}" x2="{gx:.2}" y2="{:.2}" stroke="#e0e0e0"/>"##, TOP + ph).unwrap();
        writeln!(w, r#"<text x="{gx:.2}" y="{:.2}" text-anchor="middle">{x:.0}</text>"#, TOP + ph + 18.0).unwrap();
    }
    match kind {
        PlotKind::Capacity => {
            for i in 0..=5 {
                let v = y_top * i as f64 / 5.0;
                let gy = TOP + ph * (1.0 - i as f64 / 5.0);
                writeln!(w, r##"<line x1="{LEFT}" y1="{gy:.2}" x2="{:.2}" y2="{gy:.2}" stroke="#e0e0e0"/>"##, LEFT + pw)
                    .unwrap();
                writeln!(w, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{v:.3}</text>"#, LEFT - 6.0, gy + 4.0)
                    .unwrap();
            }
        }
        PlotKind::Outage => {
            let decades = -OUTAGE_FLOOR.log10().round() as i32;
            for e in 0..=decades {
                let gy = py(10f64.powi(-e));
                writeln!(w, r##"<line x1="{LEFT}" y1="{gy:.2}" x2="{:.2}" y2="{gy:.2}" stroke="#e0e0e0"/>"##, LEFT + pw)
                    .unwrap();
                writeln!(w, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">1e-{e}</text>"#, LEFT - 6.0, gy + 4.0)
                    .unwrap();
            }
        }
    }
    writeln!(w, r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#).unwrap();
    writeln!(
        w,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">brightness temperature (K)</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 15.0
    )
    .unwrap();
    let y_label = match kind {
        PlotKind::Capacity => format!("ergodic capacity ({unit})"),
        PlotKind::Outage => "outage probability".to_string(),
    };
    writeln!(
        w,
        r#"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">{y_label}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0
    )
    .unwrap();

    let mut alphas: Vec<f64> = Vec::new();
    let mut ms: Vec<f64> = Vec::new();
    for se in series {
        if !alphas.contains(&se.alpha) {
            alphas.push(se.alpha);
        }
        if !ms.contains(&se.m) {
            ms.push(se.m);
        }
    }
    for (i, se) in series.iter().enumerate() {
        let color = COLORS[ms.iter().position(|&m| m == se.m).unwrap_or(0) % COLORS.len()];
        let dash = DASHES[alphas.iter().position(|&a| a == se.alpha).unwrap_or(0) % DASHES.len()];
        let dash_attr = if dash.is_empty() { String::new() } else { format!(r#" stroke-dasharray="{dash}""#) };
        let pts: Vec<String> = se.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        writeln!(
            w,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.6"{dash_attr} points="{}"/>"#,
            pts.join(" ")
        )
        .unwrap();
        let ly = TOP + 14.0 + 18.0 * i as f64;
        let lx = LEFT + pw + 12.0;
        writeln!(
            w,
            r#"<line x1="{lx:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{color}" stroke-width="1.6"{dash_attr}/>"#,
            lx + 30.0
        )
        .unwrap();
        writeln!(w, r#"<text x="{:.1}" y="{:.1}">alpha={} m={}</text>"#, lx + 36.0, ly + 4.0, se.alpha, se.m).unwrap();
    }
    writeln!(w, "</svg>").unwrap();
    s
}

/// Writes one capacity chart and one outage chart per (band, distance, power)
/// panel; returns the paths written. An empty slice writes nothing.
pub fn emit_plots(rows: &[SweepRow], path_prefix: &Path) -> Result<Vec<PathBuf>> {
    if rows.is_empty() {
        log::warn!("no rows to plot; no chart written");
        return Ok(Vec::new());
    }
    let mut panels: Vec<Vec<&SweepRow>> = Vec::new();
    for r in rows {
        match panels.iter_mut().find(|p| same_panel(p[0], r)) {
            Some(p) => p.push(r),
            None => panels.push(vec![r]),
        }
    }
    let stem = path_prefix.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let dir = path_prefix.parent().unwrap_or(Path::new(""));
    let mut written = Vec::new();
    for panel in panels {
        let head = panel[0];
        for kind in [PlotKind::Capacity, PlotKind::Outage] {
            let name = format!("{stem}{}_d{:e}_pt{:e}_{}.svg", head.band.name(), head.d, head.p_t, kind.suffix());
            let title = format!("{} band, d = {:e} m, P_t = {} W", head.band.name(), head.d, head.p_t);
            let path = dir.join(name);
            std::fs::write(&path, render(&title, kind, &series_of(&panel, kind)))?;
            written.push(path);
        }
    }
    Ok(written)
}
