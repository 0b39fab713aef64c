//! Deterministic SVG pictures of diagrams and placed regions.
//!
//! The output depends only on the inputs: coordinates are printed with four
//! decimals and elements are emitted in a fixed order, so rendering the same
//! document twice yields identical bytes.

use std::fmt::Write as _;

use crate::affine::{lattice_length, q, ConvexPolygon, RationalPoint};
use crate::atf::BaseDiagram;
use crate::packing::Region;

const CANVAS: f64 = 480.0;
const MARGIN: f64 = 24.0;

#[derive(Debug, Clone, Default)]
pub struct RenderOptions {
    /// Draws a dashed circle of this radius (in diagram units) around the
    /// fiber, used to show that nodes have been clustered.
    pub cluster_radius: Option<f64>,
    pub title: Option<String>,
}

struct Viewport {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl Viewport {
    fn fit(poly: &ConvexPolygon) -> Self {
        let pts: Vec<(f64, f64)> = poly.vertices().iter().map(|p| p.to_f64()).collect();
        let min_x = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let max_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        let min_y = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let max_y = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
        Viewport { min_x, max_y, scale: (CANVAS - 2.0 * MARGIN) / span }
    }

    fn map(&self, p: &RationalPoint) -> (f64, f64) {
        let (x, y) = p.to_f64();
        (MARGIN + (x - self.min_x) * self.scale, MARGIN + (self.max_y - y) * self.scale)
    }
}

fn fmt(v: f64) -> String {
    // Avoid "-0.0000" so output is stable across sign-of-zero noise.
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

fn points_attr(view: &Viewport, poly: &ConvexPolygon) -> String {
    poly.vertices()
        .iter()
        .map(|p| {
            let (x, y) = view.map(p);
            format!("{},{}", fmt(x), fmt(y))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

const REGION_FILLS: [&str; 5] = ["#4c78a8", "#f58518", "#54a24b", "#e45756", "#b279a2"];

pub fn render_svg(d: &BaseDiagram, regions: &[Region], opts: &RenderOptions) -> String {
    let view = Viewport::fit(&d.polygon);
    let mut out = String::new();
    let size = fmt(CANVAS);
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    )
    .unwrap();
    let title = opts.title.clone().unwrap_or_else(|| format!("T{}", d.triple));
    writeln!(out, "  <title>{}</title>", escape(&title)).unwrap();
    writeln!(
        out,
        r##"  <polygon class="base" points="{}" fill="#f4f4f4" stroke="#222" stroke-width="1.5"/>"##,
        points_attr(&view, &d.polygon)
    )
    .unwrap();

    for (k, r) in regions.iter().enumerate() {
        let fill = REGION_FILLS[k % REGION_FILLS.len()];
        // A region whose pieces fail to build is skipped; the verifier reports it.
        if let Ok(pieces) = r.pieces() {
            for piece in &pieces {
                writeln!(
                    out,
                    r##"  <polygon class="region {}" points="{}" fill="{fill}" fill-opacity="0.35" stroke="{fill}" stroke-width="1"/>"##,
                    r.kind(),
                    points_attr(&view, piece)
                )
                .unwrap();
            }
        }
    }

    for (_, v, n) in d.cut_segments() {
        let (x1, y1) = view.map(&v);
        let (x2, y2) = view.map(&n);
        writeln!(
            out,
            r##"  <line class="cut" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#555" stroke-width="1" stroke-dasharray="4 3"/>"##,
            fmt(x1),
            fmt(y1),
            fmt(x2),
            fmt(y2)
        )
        .unwrap();
    }

    let (fx, fy) = view.map(&d.fiber);
    if let Some(r) = &opts.cluster_radius {
        let radius = r * view.scale;
        writeln!(
            out,
            r##"  <circle class="cluster" cx="{}" cy="{}" r="{}" fill="none" stroke="#888" stroke-dasharray="2 2"/>"##,
            fmt(fx),
            fmt(fy),
            fmt(radius)
        )
        .unwrap();
    }

    const ARM: f64 = 4.0;
    for (_, p) in d.nodes() {
        let (x, y) = view.map(&p);
        writeln!(
            out,
            r##"  <path class="node" d="M {} {} L {} {} M {} {} L {} {}" stroke="#000" stroke-width="1.5"/>"##,
            fmt(x - ARM),
            fmt(y - ARM),
            fmt(x + ARM),
            fmt(y + ARM),
            fmt(x - ARM),
            fmt(y + ARM),
            fmt(x + ARM),
            fmt(y - ARM)
        )
        .unwrap();
    }

    writeln!(out, r##"  <circle class="fiber" cx="{}" cy="{}" r="3" fill="#c00"/>"##, fmt(fx), fmt(fy)).unwrap();
    out.push_str("</svg>\n");
    out
}

/// Radius of a circle around the fiber enclosing every node, when each node
/// is within lattice distance 1/4 of the fiber along its cut.
pub fn cluster_radius(d: &BaseDiagram) -> Option<f64> {
    let nodes = d.nodes();
    let limit = q(1, 4);
    if nodes.is_empty() || nodes.iter().any(|(_, p)| lattice_length(p, &d.fiber) > limit) {
        return None;
    }
    let (fx, fy) = d.fiber.to_f64();
    let far = nodes
        .iter()
        .map(|(_, p)| {
            let (x, y) = p.to_f64();
            (x - fx).hypot(y - fy)
        })
        .fold(0.0, f64::max);
    Some(1.25 * far)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atf::{cluster_nodes, seed_diagram_with, SeedOptions};
    use crate::markov::MarkovTriple;
    use crate::packing::five_monotone_triangles;

    #[test]
    fn svg_is_deterministic_and_complete() {
        let opts = SeedOptions { trade_all: true, ..SeedOptions::default() };
        let d = seed_diagram_with(&MarkovTriple::new(1, 2, 5).unwrap(), &opts).unwrap();
        let d = cluster_nodes(&d, &q(1, 10)).unwrap();
        let p = five_monotone_triangles(&d).unwrap();
        let ro = RenderOptions { cluster_radius: cluster_radius(&d), title: None };
        let a = render_svg(&d, &p.regions, &ro);
        assert_eq!(a, render_svg(&d, &p.regions, &ro));
        assert_eq!(a.matches(r#"class="node""#).count(), 3);
        assert_eq!(a.matches(r#"class="cut""#).count(), 3);
        assert_eq!(a.matches("class=\"region").count(), 5);
        assert!(a.contains(r#"class="cluster""#));
        assert!(!a.contains("-0.0000"));
    }
}
