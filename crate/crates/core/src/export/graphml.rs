//! GraphML writer.
//!
//! Emits an undirected graph with node attributes (label, class,
//! frequency, size, viewport x/y) and edge weights declared as GraphML
//! keys, so the files open cleanly in yEd, Gephi, and igraph.

use super::{rescale_positions, xml_escape, ExportError, StyleSpec, VIEW_HI, VIEW_LO};
use crate::layout::Point;
use crate::simgraph::HeteroGraph;
use std::io::Write;

/// Write a graph with positions as GraphML.
pub fn write_graphml(
    graph: &HeteroGraph,
    positions: &[Point],
    style: &StyleSpec,
    out: &mut dyn Write,
) -> Result<(), ExportError> {
    if positions.len() != graph.n_nodes() {
        return Err(ExportError::LengthMismatch {
            expected: graph.n_nodes(),
            got: positions.len(),
        });
    }
    let scaled = rescale_positions(positions, VIEW_LO, VIEW_HI);

    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        out,
        r#"<graphml xmlns="http://graphml.graphdrawing.org/xmlns">"#
    )?;
    for (id, ty) in [
        ("label", "string"),
        ("class", "string"),
        ("frequency", "int"),
        ("size", "double"),
        ("x", "double"),
        ("y", "double"),
    ] {
        writeln!(
            out,
            r#"  <key id="{id}" for="node" attr.name="{id}" attr.type="{ty}"/>"#
        )?;
    }
    writeln!(
        out,
        r#"  <key id="weight" for="edge" attr.name="weight" attr.type="double"/>"#
    )?;
    writeln!(out, r#"  <graph id="G" edgedefault="undirected">"#)?;
    for (i, node) in graph.nodes.iter().enumerate() {
        let size = style.size_of(node.frequency)?;
        writeln!(out, r#"    <node id="n{i}">"#)?;
        writeln!(
            out,
            r#"      <data key="label">{}</data>"#,
            xml_escape(&node.label)
        )?;
        writeln!(out, r#"      <data key="class">{}</data>"#, node.class.name())?;
        writeln!(
            out,
            r#"      <data key="frequency">{}</data>"#,
            node.frequency
        )?;
        writeln!(out, r#"      <data key="size">{size:.6}</data>"#)?;
        writeln!(out, r#"      <data key="x">{:.6}</data>"#, scaled[i].x)?;
        writeln!(out, r#"      <data key="y">{:.6}</data>"#, scaled[i].y)?;
        writeln!(out, r#"    </node>"#)?;
    }
    for (j, e) in graph.edges.iter().enumerate() {
        writeln!(
            out,
            r#"    <edge id="e{j}" source="n{}" target="n{}">"#,
            e.source, e.target
        )?;
        writeln!(out, r#"      <data key="weight">{:.6}</data>"#, e.weight)?;
        writeln!(out, r#"    </edge>"#)?;
    }
    writeln!(out, r#"  </graph>"#)?;
    writeln!(out, r#"</graphml>"#)?;
    Ok(())
}
