//! Minimal self-contained SVG plotting: enough for the convergence figure
//! and phase portraits. Output is byte-deterministic; the only run-varying
//! element is an optional timestamp comment.

use std::fmt::Write as _;

pub struct Series {
    pub label: String,
    pub color: &'static str,
    pub points: Vec<(f64, f64)>,
    pub marker: bool,
    pub dashed: bool,
}

pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    /// Horizontal guide lines (label, y value).
    pub h_lines: Vec<(String, f64)>,
    /// Secondary top-axis tick labels (x position in data coords, text).
    pub top_ticks: Vec<(f64, String)>,
    pub timestamp: bool,
}

const W: f64 = 720.0;
const H: f64 = 480.0;
const ML: f64 = 70.0;
const MR: f64 = 30.0;
const MT: f64 = 50.0;
const MB: f64 = 55.0;

fn nice_ticks(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if !(hi > lo) {
        return vec![lo];
    }
    let raw = (hi - lo) / n as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let step = if norm < 1.5 {
        1.0
    } else if norm < 3.5 {
        2.0
    } else if norm < 7.5 {
        5.0
    } else {
        10.0
    } * mag;
    let start = (lo / step).ceil() * step;
    let mut out = Vec::new();
    let mut t = start;
    while t <= hi + 1e-12 * step {
        out.push(t);
        t += step;
    }
    out
}

impl Plot {
    pub fn render(&self) -> String {
        let mut xs: Vec<f64> = Vec::new();
        let mut ys: Vec<f64> = Vec::new();
        for s in &self.series {
            for &(x, y) in &s.points {
                if x.is_finite() && y.is_finite() {
                    xs.push(x);
                    ys.push(y);
                }
            }
        }
        for &(_, y) in &self.h_lines {
            ys.push(y);
        }
        let (x_lo, x_hi) = bounds(&xs);
        let (y_lo, y_hi) = bounds(&ys);
        let px = |x: f64| ML + (x - x_lo) / (x_hi - x_lo) * (W - ML - MR);
        let py = |y: f64| H - MB - (y - y_lo) / (y_hi - y_lo) * (H - MT - MB);

        let mut out = String::new();
        out.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
        ));
        if self.timestamp {
            let t = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            let _ = writeln!(out, "<!-- generated unix:{t} -->");
        }
        out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
        let _ = writeln!(
            out,
            "<text x=\"{:.1}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{}</text>",
            W / 2.0,
            esc(&self.title)
        );

        // axes
        let _ = writeln!(
            out,
            "<line x1=\"{ML}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"/>",
            H - MB,
            W - MR,
            H - MB
        );
        let _ = writeln!(
            out,
            "<line x1=\"{ML}\" y1=\"{MT}\" x2=\"{ML}\" y2=\"{:.1}\" stroke=\"black\"/>",
            H - MB
        );
        for t in nice_ticks(x_lo, x_hi, 6) {
            let x = px(t);
            let _ = writeln!(
                out,
                "<line x1=\"{x:.2}\" y1=\"{:.1}\" x2=\"{x:.2}\" y2=\"{:.1}\" stroke=\"black\"/>",
                H - MB,
                H - MB + 5.0
            );
            let _ = writeln!(
                out,
                "<text x=\"{x:.2}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{}</text>",
                H - MB + 18.0,
                fmt_tick(t)
            );
        }
        for t in nice_ticks(y_lo, y_hi, 6) {
            let y = py(t);
            let _ = writeln!(
                out,
                "<line x1=\"{:.1}\" y1=\"{y:.2}\" x2=\"{ML}\" y2=\"{y:.2}\" stroke=\"black\"/>",
                ML - 5.0
            );
            let _ = writeln!(
                out,
                "<text x=\"{:.1}\" y=\"{y:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\" dominant-baseline=\"middle\">{}</text>",
                ML - 8.0,
                fmt_tick(t)
            );
        }
        for (x_data, label) in &self.top_ticks {
            if *x_data < x_lo || *x_data > x_hi {
                continue;
            }
            let x = px(*x_data);
            let _ = writeln!(
                out,
                "<line x1=\"{x:.2}\" y1=\"{MT}\" x2=\"{x:.2}\" y2=\"{:.1}\" stroke=\"#cccccc\" stroke-dasharray=\"2,3\"/>",
                H - MB
            );
            let _ = writeln!(
                out,
                "<text x=\"{x:.2}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">{}</text>",
                MT - 6.0,
                esc(label)
            );
        }
        let _ = writeln!(
            out,
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">{}</text>",
            (ML + W - MR) / 2.0,
            H - 12.0,
            esc(&self.x_label)
        );
        let _ = writeln!(
            out,
            "<text x=\"18\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.1})\">{}</text>",
            (MT + H - MB) / 2.0,
            (MT + H - MB) / 2.0,
            esc(&self.y_label)
        );

        for (label, y_val) in &self.h_lines {
            let y = py(*y_val);
            let _ = writeln!(
                out,
                "<line x1=\"{ML}\" y1=\"{y:.2}\" x2=\"{:.1}\" y2=\"{y:.2}\" stroke=\"#888888\" stroke-dasharray=\"6,4\"/>",
                W - MR
            );
            let _ = writeln!(
                out,
                "<text x=\"{:.1}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#555555\" text-anchor=\"end\">{}</text>",
                W - MR - 4.0,
                y - 4.0,
                esc(label)
            );
        }

        let mut legend_y = MT + 14.0;
        for s in &self.series {
            if s.points.len() > 1 {
                let mut d = String::new();
                for (i, &(x, y)) in s.points.iter().enumerate() {
                    let _ = write!(d, "{}{:.2},{:.2} ", if i == 0 { "M" } else { "L" }, px(x), py(y));
                }
                let dash = if s.dashed { " stroke-dasharray=\"5,4\"" } else { "" };
                let _ = writeln!(
                    out,
                    "<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.6\"{dash}/>",
                    d.trim_end(),
                    s.color
                );
            }
            if s.marker {
                for &(x, y) in &s.points {
                    let _ = writeln!(
                        out,
                        "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.6\" fill=\"{}\"/>",
                        px(x),
                        py(y),
                        s.color
                    );
                }
            }
            let _ = writeln!(
                out,
                "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"14\" height=\"3\" fill=\"{}\"/>",
                ML + 12.0,
                legend_y - 4.0,
                s.color
            );
            let _ = writeln!(
                out,
                "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>",
                ML + 30.0,
                legend_y,
                esc(&s.label)
            );
            legend_y += 15.0;
        }
        out.push_str("</svg>\n");
        out
    }
}

fn bounds(v: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &x in v {
        lo = lo.min(x);
        hi = hi.max(x);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        return (lo - 0.5, hi + 0.5);
    }
    let pad = 0.06 * (hi - lo);
    (lo - pad, hi + pad)
}

fn fmt_tick(t: f64) -> String {
    if t == 0.0 {
        return "0".into();
    }
    let a = t.abs();
    if a >= 1000.0 || a < 0.001 {
        format!("{t:.1e}")
    } else if a >= 10.0 {
        format!("{t:.0}")
    } else if a >= 1.0 {
        format!("{t:.1}")
    } else {
        format!("{t:.4}")
    }
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
