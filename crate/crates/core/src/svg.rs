//! Deterministic SVG rendering of a curve over its continuum.

use std::fmt::Write;

use crate::continuum::Continuum;
use crate::io::FORMAT_VERSION;
use crate::path::ParamCurve;

/// Polyline through the breakpoint cells over faint squares marking every cell.
/// The view box is the bounding box of the cell centers.
pub fn render_svg(curve: &ParamCurve, x: &Continuum) -> String {
    let [min_x, min_y, max_x, max_y] = x.bounding_box();
    let (w, h) = (max_x - min_x, max_y - min_y);
    let cell = if x.max_edge_length() > 0.0 { x.max_edge_length() } else { 0.05 };
    let px = |v: f64| (v * 800.0).round().max(1.0) as u64;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" data-format-version="{FORMAT_VERSION}" viewBox="{min_x:.6} {min_y:.6} {w:.6} {h:.6}" width="{}" height="{}">"#,
        px(if w > 0.0 { w } else { cell }),
        px(if h > 0.0 { h } else { cell }),
    );
    let _ = writeln!(out, r##"<g fill="#1f3b70" fill-opacity="0.08" stroke="none">"##);
    for c in x.cells() {
        let _ = writeln!(
            out,
            r#"<rect x="{:.6}" y="{:.6}" width="{:.6}" height="{:.6}"/>"#,
            c.coords[0] - cell / 2.0,
            c.coords[1] - cell / 2.0,
            cell,
            cell
        );
    }
    let _ = writeln!(out, "</g>");
    let points: Vec<String> = curve
        .breakpoints
        .iter()
        .map(|b| {
            let [cx, cy] = x.coords(b.cell);
            format!("{cx:.6},{cy:.6}")
        })
        .collect();
    let _ = writeln!(
        out,
        r##"<polyline fill="none" stroke="#c0392b" stroke-width="{:.6}" stroke-linejoin="round" points="{}"/>"##,
        cell / 4.0,
        points.join(" ")
    );
    out.push_str("</svg>\n");
    out
}
