//! Minimal static SVG line plots from the emitted CSV files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{HarnessError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PlotSpec {
    pub x: String,
    pub y: String,
    pub log_y: bool,
    pub title: String,
}

impl Default for PlotSpec {
    fn default() -> Self {
        PlotSpec { x: "n".into(), y: "value".into(), log_y: false, title: String::new() }
    }
}

#[derive(Clone, Debug)]
pub struct Line {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// Reads columns `x` and `y`; rows with a non-numeric cell are skipped.
pub fn read_columns(path: &Path, x: &str, y: &str) -> Result<Vec<(f64, f64)>> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap_or_default().split(',').collect();
    let col = |name: &str| {
        header.iter().position(|h| *h == name).ok_or_else(|| HarnessError::Csv {
            path: path.to_path_buf(),
            message: format!("missing column `{name}` (header: {})", header.join(",")),
        })
    };
    let (ix, iy) = (col(x)?, col(y)?);
    Ok(lines
        .filter_map(|l| {
            let cells: Vec<&str> = l.split(',').collect();
            let a = cells.get(ix)?.parse::<f64>().ok()?;
            let b = cells.get(iy)?.parse::<f64>().ok()?;
            (a.is_finite() && b.is_finite()).then_some((a, b))
        })
        .collect())
}

const PALETTE: [&str; 6] = ["#1b6ca8", "#d1495b", "#2e933c", "#edae49", "#6a4c93", "#30343f"];
const W: f64 = 640.0;
const H: f64 = 420.0;
const PAD: f64 = 56.0;

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    (0..=4).map(|i| lo + (hi - lo) * i as f64 / 4.0).collect()
}

pub fn render_svg(lines: &[Line], spec: &PlotSpec) -> String {
    let ty = |v: f64| if spec.log_y { v.log10() } else { v };
    let pts: Vec<(f64, f64)> = lines
        .iter()
        .flat_map(|l| l.points.iter().copied())
        .filter(|&(_, y)| !spec.log_y || y > 0.0)
        .map(|(x, y)| (x, ty(y)))
        .collect();
    let bound = |f: fn(&(f64, f64)) -> f64| {
        let lo = pts.iter().map(f).fold(f64::INFINITY, f64::min);
        let hi = pts.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
        match (lo.is_finite(), hi > lo) {
            (true, true) => (lo, hi),
            (true, false) => (lo - 0.5, lo + 0.5),
            _ => (0.0, 1.0),
        }
    };
    let (x0, x1) = bound(|p| p.0);
    let (y0, y1) = bound(|p| p.1);
    let sx = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - (y - y0) / (y1 - y0) * (H - 2.0 * PAD);

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<path d="M{PAD} {PAD} V{} H{}" fill="none" stroke="black"/>"#, H - PAD, W - PAD);
    for t in ticks(x0, x1) {
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-size="11" text-anchor="middle">{}</text>"#,
            sx(t),
            H - PAD + 16.0,
            short(t)
        );
    }
    for t in ticks(y0, y1) {
        let label = if spec.log_y { format!("1e{}", short(t)) } else { short(t) };
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-size="11" text-anchor="end">{label}</text>"#,
            PAD - 6.0,
            sy(t) + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{}</text>"#,
        W / 2.0,
        H - 12.0,
        esc(&spec.x)
    );
    let _ = writeln!(
        s,
        r#"<text x="14" y="{}" font-size="12" text-anchor="middle" transform="rotate(-90 14 {})">{}</text>"#,
        H / 2.0,
        H / 2.0,
        esc(&spec.y)
    );
    if !spec.title.is_empty() {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="24" font-size="14" text-anchor="middle">{}</text>"#,
            W / 2.0,
            esc(&spec.title)
        );
    }
    for (i, line) in lines.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let d: Vec<String> = line
            .points
            .iter()
            .filter(|&&(_, y)| !spec.log_y || y > 0.0)
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(ty(y))))
            .collect();
        let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#, d.join(" "));
        let ly = PAD + 14.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{ly:.1}" font-size="11" fill="{color}" text-anchor="end">{}</text>"#,
            W - PAD,
            esc(&line.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn short(v: f64) -> String {
    let r = (v * 1000.0).round() / 1000.0;
    format!("{r}")
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// One line per input file, labelled by file stem.
pub fn emit_plot(inputs: &[PathBuf], spec: &PlotSpec, out: &Path) -> Result<()> {
    if inputs.is_empty() {
        return Err(HarnessError::Config("plot needs at least one input CSV".into()));
    }
    let lines = inputs
        .iter()
        .map(|p| {
            let label = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok(Line { label, points: read_columns(p, &spec.x, &spec.y)? })
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    std::fs::write(out, render_svg(&lines, spec)).map_err(|e| HarnessError::io(out, e))
}
