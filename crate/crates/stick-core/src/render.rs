//! Deterministic SVG rendering of representations.
//!
//! Two styles. `Slope` draws the classical picture: the k-th event sits at
//! integer arc position k on a ground line of slope -1, A-segments rise
//! vertically from their origins up to the height of their tip's
//! projection, B-segments run horizontally right up to their tip's
//! projection, so two segments cross exactly when the overlap pattern
//! holds. `Flat` stacks every interval above a horizontal axis, one lane
//! per vertex.
//!
//! Output is byte-identical across runs for identical input.

use std::fmt::Write as _;

use crate::rep::StickRepresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderStyle {
    Flat,
    Slope,
}

const UNIT: usize = 28;
const MARGIN: usize = 40;

/// Render a representation as SVG text.
pub fn render(rep: &StickRepresentation, style: RenderStyle) -> String {
    match style {
        RenderStyle::Slope => render_slope(rep),
        RenderStyle::Flat => render_flat(rep),
    }
}

fn render_slope(rep: &StickRepresentation) -> String {
    let count = rep.len();
    let span = UNIT * count.max(1);
    let size = 2 * MARGIN + span;
    let ground = |k: usize| (MARGIN + k * UNIT, MARGIN + k * UNIT);

    let mut lines = Vec::new();
    let mut labels = Vec::new();
    let mut dots = Vec::new();

    for i in 1..=rep.a_count() {
        let (x, y_origin) = ground(rep.a_origin_pos(i));
        let (_, y_top) = ground(rep.a_tip_pos(i));
        lines.push((x, y_origin, x, y_top, "a"));
        labels.push((x + 4, y_origin + 16, format!("A{i}")));
        let (tx, ty) = ground(rep.a_tip_pos(i));
        dots.push((tx, ty));
    }
    for j in 1..=rep.b_count() {
        let (x_origin, y) = ground(rep.b_origin_pos(j));
        let (x_right, _) = ground(rep.b_tip_pos(j));
        lines.push((x_origin, y, x_right, y, "b"));
        labels.push((x_origin.saturating_sub(24), y + 4, format!("B{j}")));
        let (tx, ty) = ground(rep.b_tip_pos(j));
        dots.push((tx, ty));
    }

    let mut svg = svg_open(size, size);
    let (gx0, gy0) = (MARGIN.saturating_sub(UNIT / 2), MARGIN.saturating_sub(UNIT / 2));
    let (gx1, gy1) = (MARGIN + span + UNIT / 2, MARGIN + span + UNIT / 2);
    let _ = writeln!(
        svg,
        r#"  <line x1="{gx0}" y1="{gy0}" x2="{gx1}" y2="{gy1}" class="ground"/>"#
    );
    for (x1, y1, x2, y2, class) in lines {
        let _ = writeln!(
            svg,
            r#"  <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" class="{class}"/>"#
        );
    }
    for (cx, cy) in dots {
        let _ = writeln!(svg, r#"  <circle cx="{cx}" cy="{cy}" r="3" class="tip"/>"#);
    }
    for (x, y, text) in labels {
        let _ = writeln!(svg, r#"  <text x="{x}" y="{y}">{text}</text>"#);
    }
    svg.push_str("</svg>\n");
    svg
}

fn render_flat(rep: &StickRepresentation) -> String {
    let count = rep.len();
    let span = UNIT * count.max(1);
    let lanes = rep.a_count() + rep.b_count();
    let lane_height = 18;
    let base_y = MARGIN + lanes * lane_height + 20;
    let width = 2 * MARGIN + span;
    let height = base_y + MARGIN;
    let x_at = |k: usize| MARGIN + k * UNIT;

    let mut svg = svg_open(width, height);
    let _ = writeln!(
        svg,
        r#"  <line x1="{}" y1="{base_y}" x2="{}" y2="{base_y}" class="ground"/>"#,
        x_at(0).saturating_sub(UNIT / 2),
        x_at(count.max(1) - 1) + UNIT / 2,
    );

    // Ticks and event names along the axis.
    for (k, ev) in rep.events().iter().enumerate() {
        let x = x_at(k);
        let _ = writeln!(
            svg,
            r#"  <line x1="{x}" y1="{}" x2="{x}" y2="{}" class="tick"/>"#,
            base_y - 3,
            base_y + 3
        );
        let _ = writeln!(svg, r#"  <text x="{}" y="{}">{ev}</text>"#, x - 10, base_y + 16);
    }

    // One lane per vertex, A side first.
    let mut lane = 0;
    let mut interval = |from: usize, to: usize, class: &str, label: String, svg: &mut String| {
        let y = base_y - 20 - lane * lane_height;
        lane += 1;
        let _ = writeln!(
            svg,
            r#"  <line x1="{}" y1="{y}" x2="{}" y2="{y}" class="{class}"/>"#,
            x_at(from),
            x_at(to)
        );
        let _ = writeln!(svg, r#"  <text x="{}" y="{}">{label}</text>"#, x_at(from) - 28, y + 4);
    };
    for i in 1..=rep.a_count() {
        interval(rep.a_tip_pos(i), rep.a_origin_pos(i), "a", format!("A{i}"), &mut svg);
    }
    for j in 1..=rep.b_count() {
        interval(rep.b_origin_pos(j), rep.b_tip_pos(j), "b", format!("B{j}"), &mut svg);
    }
    svg.push_str("</svg>\n");
    svg
}

fn svg_open(width: usize, height: usize) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    svg.push_str(
        "  <style>\n    line.ground { stroke: #888; stroke-dasharray: 4 3; }\n    line.a { stroke: #c0392b; stroke-width: 2; }\n    line.b { stroke: #2980b9; stroke-width: 2; }\n    line.tick { stroke: #888; }\n    circle.tip { fill: #444; }\n    text { font: 11px monospace; fill: #333; }\n  </style>\n",
    );
    svg
}
