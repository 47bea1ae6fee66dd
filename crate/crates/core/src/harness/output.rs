//! CSV and SVG emission for sweep results.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::scheme::Scheme;

use super::SweepResult;

pub const CSV_HEADER: &str = "scheme,num_signals,snr_db,trials,errors,error_rate,ci_low,ci_high";

pub fn write_csv<W: Write>(result: &SweepResult, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for p in result.sorted() {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            p.scheme,
            p.num_signals,
            p.snr_db,
            p.trials,
            p.errors,
            p.error_rate,
            p.ci_low,
            p.ci_high
        )?;
    }
    out.flush()
}

pub fn emit_csv(result: &SweepResult, path: &Path) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = std::fs::File::create(path).map_err(io)?;
    write_csv(result, std::io::BufWriter::new(file)).map_err(io)
}

pub fn emit_plot(results: &[SweepResult], path: &Path) -> Result<()> {
    let svg = plot_svg(results)?;
    std::fs::write(path, svg).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

fn color(scheme: Scheme) -> &'static str {
    match scheme {
        Scheme::Sts => "#d62728",
        Scheme::Walsh => "#1f77b4",
        Scheme::Gold => "#2ca02c",
        Scheme::ZadoffChu => "#9467bd",
    }
}

fn label(scheme: Scheme) -> &'static str {
    match scheme {
        Scheme::Sts => "STS",
        Scheme::Walsh => "Walsh",
        Scheme::Gold => "Gold",
        Scheme::ZadoffChu => "Zadoff-Chu",
    }
}

/// Log-scale error rate versus SNR, one polyline per (scheme, signal count).
/// Points with no errors are drawn hollow at `1 / (2 trials)`.
pub fn plot_svg(results: &[SweepResult]) -> Result<String> {
    let merged = SweepResult::merge(results.iter().cloned());
    if merged.points.is_empty() {
        return Err(Error::Config("nothing to plot".into()));
    }
    let plotted = |p: &super::SweepPoint| {
        if p.errors == 0 {
            1.0 / (2.0 * p.trials as f64)
        } else {
            p.error_rate
        }
    };
    let min_rate = merged.points.iter().map(plotted).fold(1.0, f64::min);
    let y_lo = min_rate.log10().floor().min(-1.0);
    let (mut x_lo, mut x_hi) = merged
        .points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p.snr_db), hi.max(p.snr_db))
        });
    if x_hi - x_lo < 1e-9 {
        x_lo -= 1.0;
        x_hi += 1.0;
    }
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * pw;
    let sy = |r: f64| TOP + (r.log10() / y_lo) * ph;

    let mut s = String::new();
    let w = &mut s;
    writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(w, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        w,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">Detection error rate vs OFDM symbol SNR</text>"#,
        LEFT + pw / 2.0
    )
    .unwrap();

    // Decade grid and labels.
    for d in (y_lo as i32)..=0 {
        let y = sy(10f64.powi(d));
        writeln!(
            w,
            "<line x1=\"{LEFT}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#ccc\"/>",
            LEFT + pw
        )
        .unwrap();
        writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">1e{d}</text>"#,
            LEFT - 6.0,
            y + 4.0
        )
        .unwrap();
    }
    let step = nice_step(x_hi - x_lo);
    let mut x = (x_lo / step).ceil() * step;
    while x <= x_hi + 1e-9 {
        let px = sx(x);
        writeln!(
            w,
            "<line x1=\"{px:.2}\" y1=\"{TOP}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"#eee\"/>",
            TOP + ph
        )
        .unwrap();
        writeln!(
            w,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{x}</text>"#,
            TOP + ph + 18.0
        )
        .unwrap();
        x += step;
    }
    writeln!(
        w,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    )
    .unwrap();
    writeln!(
        w,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">SNR (dB)</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 18.0
    )
    .unwrap();
    writeln!(
        w,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">Detection error rate</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0
    )
    .unwrap();

    let mut any_clamped = false;
    for (i, (scheme, signals)) in merged.series().into_iter().enumerate() {
        let curve = merged.curve(scheme, signals);
        let c = color(scheme);
        let dash = if signals > 1 {
            r#" stroke-dasharray="6 3""#
        } else {
            ""
        };
        let pts: Vec<String> = curve
            .iter()
            .map(|p| format!("{:.2},{:.2}", sx(p.snr_db), sy(plotted(p))))
            .collect();
        writeln!(
            w,
            r#"<polyline fill="none" stroke="{c}" stroke-width="1.5"{dash} points="{}"/>"#,
            pts.join(" ")
        )
        .unwrap();
        for p in &curve {
            let fill = if p.errors == 0 {
                any_clamped = true;
                "white"
            } else {
                c
            };
            writeln!(
                w,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{fill}" stroke="{c}"/>"#,
                sx(p.snr_db),
                sy(plotted(p))
            )
            .unwrap();
        }
        let ly = TOP + 10.0 + 20.0 * i as f64;
        let lx = LEFT + pw + 15.0;
        writeln!(
            w,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{c}" stroke-width="1.5"{dash}/>"#,
            lx + 30.0
        )
        .unwrap();
        let suffix = if signals == 1 { "signal" } else { "signals" };
        writeln!(
            w,
            r#"<text x="{}" y="{}">{} ({signals} {suffix})</text>"#,
            lx + 36.0,
            ly + 4.0,
            label(scheme)
        )
        .unwrap();
    }
    if any_clamped {
        writeln!(
            w,
            r#"<text x="{LEFT}" y="{:.2}" font-size="10">hollow markers: zero errors, plotted at 1/(2 trials)</text>"#,
            HEIGHT - 4.0
        )
        .unwrap();
    }
    writeln!(w, "</svg>").unwrap();
    Ok(s)
}

fn nice_step(span: f64) -> f64 {
    [1.0, 2.0, 5.0, 10.0, 20.0]
        .into_iter()
        .find(|&s| span / s <= 12.0)
        .unwrap_or(50.0)
}
