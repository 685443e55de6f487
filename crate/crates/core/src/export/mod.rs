//! Map exporters: Pajek network/partition files, GraphML, SVG, and
//! JSON animation frames.
//!
//! Shared visual conventions live here. Node area encodes document
//! frequency through a logarithmic size law, node shape encodes the
//! attribute class (words are triangles, authors ellipses, journals
//! diamonds), and every exporter rescales layout coordinates into the
//! same unit viewport with a 5% margin so different formats agree on
//! the picture.

mod frames;
mod graphml;
mod pajek;
mod svg;

pub use frames::{build_frames, Frame, FrameEdge, FrameManifest, FrameNode};
pub use graphml::write_graphml;
pub use pajek::{write_clu, write_pajek};
pub use svg::render_svg;

use crate::attributes::AttributeClass;
use crate::layout::Point;
use thiserror::Error;

/// Margin of the unit viewport: coordinates land in [0.05, 0.95].
pub(crate) const VIEW_LO: f64 = 0.05;
pub(crate) const VIEW_HI: f64 = 0.95;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("node frequency {freq} is below 1; size undefined")]
    BadFreq { freq: usize },
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Marker shape per attribute class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeShape {
    Triangle,
    Ellipse,
    Diamond,
}

impl NodeShape {
    pub fn for_class(class: AttributeClass) -> Self {
        match class {
            AttributeClass::Word => NodeShape::Triangle,
            AttributeClass::Author => NodeShape::Ellipse,
            AttributeClass::Journal => NodeShape::Diamond,
        }
    }

    pub fn pajek_keyword(self) -> &'static str {
        match self {
            NodeShape::Triangle => "triangle",
            NodeShape::Ellipse => "ellipse",
            NodeShape::Diamond => "diamond",
        }
    }

    pub fn css_class(self) -> &'static str {
        match self {
            NodeShape::Triangle => "node-triangle",
            NodeShape::Ellipse => "node-ellipse",
            NodeShape::Diamond => "node-diamond",
        }
    }
}

/// Sizing and coloring knobs shared by all exporters.
#[derive(Debug, Clone, PartialEq)]
pub struct StyleSpec {
    /// Size of a frequency-1 node.
    pub min_size: f64,
    /// Multiplier on ln(frequency).
    pub size_scale: f64,
    /// Fill for nodes flagged as new to their time slice.
    pub new_node_color: String,
}

impl Default for StyleSpec {
    fn default() -> Self {
        StyleSpec {
            min_size: 4.0,
            size_scale: 3.0,
            new_node_color: "green".to_string(),
        }
    }
}

impl StyleSpec {
    pub fn size_of(&self, frequency: usize) -> Result<f64, ExportError> {
        node_size(frequency, self.min_size, self.size_scale)
    }
}

/// Escape the five XML-special characters for element text and attributes.
pub(crate) fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(ch),
        }
    }
    out
}

/// Logarithmic node size: `min + scale · ln(frequency)`.
///
/// Grows slowly enough that a tenfold frequency difference stays
/// readable next to singletons. Frequency must be at least 1.
pub fn node_size(frequency: usize, min_size: f64, size_scale: f64) -> Result<f64, ExportError> {
    if frequency < 1 {
        return Err(ExportError::BadFreq { freq: frequency });
    }
    Ok(min_size + size_scale * (frequency as f64).ln())
}

/// Map positions into `[lo, hi]²` preserving aspect ratio.
///
/// One uniform scale (the smaller of the two axis fits) is applied and
/// the slack axis is centered, so shapes are not distorted. Degenerate
/// extents collapse to the viewport center.
pub fn rescale_positions(positions: &[Point], lo: f64, hi: f64) -> Vec<Point> {
    if positions.is_empty() {
        return Vec::new();
    }
    let span = hi - lo;
    let min_x = positions.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
    let max_x = positions.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
    let min_y = positions.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
    let max_y = positions.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
    let w = max_x - min_x;
    let h = max_y - min_y;
    let scale = match (w > 0.0, h > 0.0) {
        (true, true) => (span / w).min(span / h),
        (true, false) => span / w,
        (false, true) => span / h,
        (false, false) => 0.0,
    };
    let off_x = lo + (span - w * scale) / 2.0;
    let off_y = lo + (span - h * scale) / 2.0;
    positions
        .iter()
        .map(|p| Point::new(off_x + (p.x - min_x) * scale, off_y + (p.y - min_y) * scale))
        .collect()
}
