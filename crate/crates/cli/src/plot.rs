//! Minimal SVG rendering of a sweep: one panel per environment size with
//! average entanglement, its bound and average classical correlations versus `a`.

use std::fmt::Write;

use qcorr::SweepRow;

const PANEL_W: f64 = 320.0;
const PANEL_H: f64 = 240.0;
const MARGIN: f64 = 40.0;

struct Series {
    name: &'static str,
    color: &'static str,
    dashed: bool,
    value: fn(&SweepRow) -> Option<f64>,
}

const SERIES: [Series; 3] = [
    Series { name: "avg E", color: "#1f77b4", dashed: false, value: |r| Some(r.avg_eof) },
    Series { name: "bound", color: "#d62728", dashed: true, value: |r| r.bound },
    Series { name: "avg J", color: "#2ca02c", dashed: false, value: |r| Some(r.avg_classical) },
];

pub fn render_svg(rows: &[SweepRow]) -> String {
    let mut panels: Vec<usize> = Vec::new();
    for r in rows {
        if !panels.contains(&r.n_env) {
            panels.push(r.n_env);
        }
    }
    let width = PANEL_W * panels.len().max(1) as f64;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{PANEL_H}" font-family="sans-serif" font-size="11">"#
    );
    for (p, &n) in panels.iter().enumerate() {
        let x0 = p as f64 * PANEL_W;
        let (left, right, top, bottom) = (x0 + MARGIN, x0 + PANEL_W - 10.0, 20.0, PANEL_H - MARGIN);
        let px = |a: f64| left + a * (right - left);
        let py = |v: f64| bottom - v.clamp(0.0, 1.0) * (bottom - top);
        let _ = writeln!(
            svg,
            r##"<rect x="{left}" y="{top}" width="{}" height="{}" fill="none" stroke="#000"/>"##,
            right - left,
            bottom - top
        );
        let _ = writeln!(svg, r#"<text x="{}" y="14" text-anchor="middle">N = {n}</text>"#, (left + right) / 2.0);
        for tick in [0.0, 0.5, 1.0] {
            let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="middle">{tick}</text>"#, px(tick), bottom + 14.0);
            let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="end">{tick}</text>"#, left - 4.0, py(tick) + 4.0);
        }
        let _ =
            writeln!(svg, r#"<text x="{}" y="{}" text-anchor="middle">a</text>"#, (left + right) / 2.0, bottom + 30.0);
        for (k, s) in SERIES.iter().enumerate() {
            let pts: Vec<String> = rows
                .iter()
                .filter(|r| r.n_env == n)
                .filter_map(|r| (s.value)(r).map(|v| format!("{:.2},{:.2}", px(r.a), py(v))))
                .collect();
            let dash = if s.dashed { r#" stroke-dasharray="5,3""# } else { "" };
            let _ = writeln!(
                svg,
                r#"<polyline fill="none" stroke="{}" stroke-width="1.5"{dash} points="{}"/>"#,
                s.color,
                pts.join(" ")
            );
            let ly = top + 14.0 + 14.0 * k as f64;
            let _ = writeln!(
                svg,
                r#"<line x1="{}" y1="{ly}" x2="{}" y2="{ly}" stroke="{}"{dash}/><text x="{}" y="{}">{}</text>"#,
                right - 80.0,
                right - 60.0,
                s.color,
                right - 56.0,
                ly + 4.0,
                s.name
            );
        }
    }
    svg.push_str("</svg>\n");
    svg
}
