//! Standalone SVG rendering of a laid-out graph.
//!
//! Draws on a 1000×1000 canvas: weighted edges first, then shaped and
//! sized node markers, then text labels beneath the markers. Nodes
//! flagged as new to the current time slice are filled with the style's
//! highlight color instead of their class color.

use super::{rescale_positions, xml_escape, ExportError, NodeShape, StyleSpec, VIEW_HI, VIEW_LO};
use crate::attributes::AttributeClass;
use crate::layout::Point;
use crate::simgraph::HeteroGraph;
use std::fmt::Write as _;

const CANVAS: f64 = 1000.0;
const SIN60: f64 = 0.866_025_403_784_438_6;

fn class_fill(class: AttributeClass) -> &'static str {
    match class {
        AttributeClass::Author => "#a6cee3",
        AttributeClass::Word => "#fdbf6f",
        AttributeClass::Journal => "#cab2d6",
    }
}

/// Render a graph to an SVG document string.
///
/// `new_flags` marks nodes to highlight; pass an empty slice when the
/// notion of novelty does not apply.
pub fn render_svg(
    graph: &HeteroGraph,
    positions: &[Point],
    style: &StyleSpec,
    new_flags: &[bool],
) -> Result<String, ExportError> {
    let n = graph.n_nodes();
    if positions.len() != n {
        return Err(ExportError::LengthMismatch {
            expected: n,
            got: positions.len(),
        });
    }
    if !new_flags.is_empty() && new_flags.len() != n {
        return Err(ExportError::LengthMismatch {
            expected: n,
            got: new_flags.len(),
        });
    }
    let scaled: Vec<Point> = rescale_positions(positions, VIEW_LO, VIEW_HI)
        .into_iter()
        .map(|p| Point::new(p.x * CANVAS, p.y * CANVAS))
        .collect();

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(svg, r#"  <rect width="{CANVAS}" height="{CANVAS}" fill="white"/>"#);

    let _ = writeln!(svg, r##"  <g class="edges" stroke="#999999" stroke-opacity="0.6">"##);
    for e in &graph.edges {
        let a = scaled[e.source];
        let b = scaled[e.target];
        let _ = writeln!(
            svg,
            r#"    <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke-width="{:.2}"/>"#,
            a.x,
            a.y,
            b.x,
            b.y,
            1.0 + 2.0 * e.weight
        );
    }
    let _ = writeln!(svg, "  </g>");

    let _ = writeln!(svg, r##"  <g class="nodes" stroke="#333333" stroke-width="1">"##);
    for (i, node) in graph.nodes.iter().enumerate() {
        let size = style.size_of(node.frequency)?;
        let is_new = new_flags.get(i).copied().unwrap_or(false);
        let fill = if is_new {
            style.new_node_color.as_str()
        } else {
            class_fill(node.class)
        };
        let p = scaled[i];
        let shape = NodeShape::for_class(node.class);
        match shape {
            NodeShape::Ellipse => {
                let _ = writeln!(
                    svg,
                    r#"    <circle class="{}" cx="{:.2}" cy="{:.2}" r="{:.2}" fill="{}"/>"#,
                    shape.css_class(),
                    p.x,
                    p.y,
                    size,
                    fill
                );
            }
            NodeShape::Triangle => {
                let _ = writeln!(
                    svg,
                    r#"    <polygon class="{}" points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{}"/>"#,
                    shape.css_class(),
                    p.x,
                    p.y - size,
                    p.x - size * SIN60,
                    p.y + size * 0.5,
                    p.x + size * SIN60,
                    p.y + size * 0.5,
                    fill
                );
            }
            NodeShape::Diamond => {
                let _ = writeln!(
                    svg,
                    r#"    <polygon class="{}" points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{}"/>"#,
                    shape.css_class(),
                    p.x,
                    p.y - size,
                    p.x + size,
                    p.y,
                    p.x,
                    p.y + size,
                    p.x - size,
                    p.y,
                    fill
                );
            }
        }
    }
    let _ = writeln!(svg, "  </g>");

    let _ = writeln!(
        svg,
        r##"  <g class="labels" font-family="sans-serif" font-size="11" text-anchor="middle" fill="#222222">"##
    );
    for (i, node) in graph.nodes.iter().enumerate() {
        let size = style.size_of(node.frequency)?;
        let p = scaled[i];
        let _ = writeln!(
            svg,
            r#"    <text x="{:.2}" y="{:.2}">{}</text>"#,
            p.x,
            p.y + size + 12.0,
            xml_escape(&node.label)
        );
    }
    let _ = writeln!(svg, "  </g>");
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}
