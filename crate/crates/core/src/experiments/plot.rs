//! Standalone SVG line charts of secrecy rate against the sweep value.
//!
//! Closed-form bounds are drawn as lines, Monte-Carlo estimates as markers,
//! one color per DAC model. Points with a non-finite coordinate are skipped.

use std::fmt::Write as _;
use std::path::Path;

use super::table::ResultTable;
use crate::error::{Error, Result};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// Tick positions covering `[lo, hi]` with steps of 1, 2 or 5 × 10ⁿ.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

/// Renders the chart as an SVG document.
pub fn render_svg(table: &ResultTable) -> Result<String> {
    let dacs = table.dac_models();
    let mut xs = Vec::new();
    let mut ys = vec![0.0];
    for r in &table.rows {
        if r.sweep_value.is_finite() {
            xs.push(r.sweep_value);
            for c in [&r.secrecy_bound, &r.secrecy_mc] {
                if let Some(v) = c.value().filter(|v| v.is_finite()) {
                    ys.push(v);
                }
            }
        }
    }
    if xs.is_empty() {
        return Err(Error::Config("nothing to plot: no finite sweep values".into()));
    }
    let (x0, x1) = padded(
        xs.iter().cloned().fold(f64::INFINITY, f64::min),
        xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );
    let (y0, y1) = padded(
        ys.iter().cloned().fold(f64::INFINITY, f64::min),
        ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max) * 1.05,
    );
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + ph - (y - y0) / (y1 - y0) * ph;

    let mut s = String::new();
    // Writing to a String cannot fail.
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="14">{} / {}</text>"#,
        LEFT + pw / 2.0,
        table.scenario,
        table.series
    );
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for t in ticks(x0, x1) {
        let x = sx(t);
        let _ = writeln!(
            s,
            r##"<line x1="{x:.1}" y1="{TOP}" x2="{x:.1}" y2="{:.1}" stroke="#e0e0e0"/><text x="{x:.1}" y="{:.1}" text-anchor="middle">{}</text>"##,
            TOP + ph,
            TOP + ph + 16.0,
            fmt_tick(t)
        );
    }
    for t in ticks(y0, y1) {
        let y = sy(t);
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#e0e0e0"/><text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"##,
            LEFT + pw,
            LEFT - 6.0,
            y + 4.0,
            fmt_tick(t)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 18.0,
        table.axis
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">secrecy rate (bit/s/Hz)</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0
    );

    for (i, bits) in dacs.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let rows: Vec<_> = table.rows_for(*bits).filter(|r| r.sweep_value.is_finite()).collect();
        let line: Vec<String> = rows
            .iter()
            .filter_map(|r| r.secrecy_bound.value().filter(|v| v.is_finite()).map(|v| (r.sweep_value, v)))
            .map(|(x, y)| format!("{:.1},{:.1}", sx(x), sy(y)))
            .collect();
        if line.len() > 1 {
            let _ = writeln!(
                s,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                line.join(" ")
            );
        }
        for r in &rows {
            if let Some(v) = r.secrecy_mc.value().filter(|v| v.is_finite()) {
                let _ = writeln!(
                    s,
                    r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="none" stroke="{color}"/>"#,
                    sx(r.sweep_value),
                    sy(v)
                );
            }
        }
        let ly = TOP + 16.0 + 36.0 * i as f64;
        let lx = LEFT + pw + 14.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{color}" stroke-width="1.5"/><text x="{:.1}" y="{:.1}">b={bits} bound</text>"#,
            lx + 24.0,
            lx + 30.0,
            ly + 4.0
        );
        let _ = writeln!(
            s,
            r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="none" stroke="{color}"/><text x="{:.1}" y="{:.1}">b={bits} Monte-Carlo</text>"#,
            lx + 12.0,
            ly + 16.0,
            lx + 30.0,
            ly + 20.0
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn fmt_tick(t: f64) -> String {
    let r = (t * 1e6).round() / 1e6;
    format!("{}", if r == 0.0 { 0.0 } else { r })
}

/// Writes the chart for `table` to `path`.
pub fn emit_plot(table: &ResultTable, path: &Path) -> Result<()> {
    std::fs::write(path, render_svg(table)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dac::Resolution;
    use crate::experiments::table::{Cell, ResultRow};

    fn table() -> ResultTable {
        let row = |x: f64, bits, y: f64| ResultRow {
            sweep_value: x,
            bits,
            user_rate_mc: Cell::Value(0.0),
            user_rate_bound: Cell::Value(0.0),
            eve_rate_mc: Cell::Value(0.0),
            eve_rate_bound: Cell::Value(0.0),
            secrecy_mc: Cell::Value(y + 0.05),
            secrecy_bound: Cell::Value(y),
            std_err: Cell::Value(0.0),
            seed: 0,
        };
        ResultTable {
            scenario: "demo".into(),
            series: "a".into(),
            axis: "snr_db".into(),
            rows: vec![
                row(0.0, Resolution::Bits(1), 1.0),
                row(0.0, Resolution::Infinite, 1.5),
                row(10.0, Resolution::Bits(1), 2.0),
                row(10.0, Resolution::Infinite, 3.0),
            ],
        }
    }

    #[test]
    fn svg_has_one_line_per_dac() {
        let svg = render_svg(&table()).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("b=inf bound"));
    }

    #[test]
    fn ticks_are_round() {
        assert_eq!(ticks(-10.0, 20.0), vec![-10.0, 0.0, 10.0, 20.0]);
        assert_eq!(ticks(0.0, 9.0), vec![0.0, 2.0, 4.0, 6.0, 8.0]);
        assert_eq!(ticks(0.0, 1.0), vec![0.0, 0.2, 0.4, 0.6000000000000001, 0.8, 1.0]);
    }

    #[test]
    fn infinite_sweep_values_skipped() {
        let mut t = table();
        t.rows[3].sweep_value = f64::INFINITY;
        let svg = render_svg(&t).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
    }
}
