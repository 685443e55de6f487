//! Pajek .net and .clu writers.
//!
//! Vertex ids are 1-based, labels are double-quoted, coordinates are
//! written into the unit viewport, and the size law is expressed through
//! `x_fact`/`y_fact` multipliers relative to the minimum node size, which
//! is how Pajek scales vertex symbols. The companion .clu partition file
//! numbers the attribute classes 1 (author), 2 (word), 3 (journal).

use super::{rescale_positions, ExportError, NodeShape, StyleSpec, VIEW_HI, VIEW_LO};
use crate::attributes::AttributeClass;
use crate::layout::Point;
use crate::simgraph::HeteroGraph;
use std::io::Write;

/// Class number used in .clu partitions.
pub(crate) fn class_number(class: AttributeClass) -> usize {
    match class {
        AttributeClass::Author => 1,
        AttributeClass::Word => 2,
        AttributeClass::Journal => 3,
    }
}

fn quote_label(label: &str) -> String {
    // Pajek has no quote escaping inside labels
    format!("\"{}\"", label.replace('"', "'"))
}

/// Write a graph with positions as a Pajek .net file.
pub fn write_pajek(
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
    writeln!(out, "*Vertices {}", graph.n_nodes())?;
    for (i, node) in graph.nodes.iter().enumerate() {
        let size = style.size_of(node.frequency)?;
        let fact = size / style.min_size;
        writeln!(
            out,
            "{} {} {:.6} {:.6} {:.6} {} x_fact {:.4} y_fact {:.4}",
            i + 1,
            quote_label(&node.label),
            scaled[i].x,
            scaled[i].y,
            0.5,
            NodeShape::for_class(node.class).pajek_keyword(),
            fact,
            fact,
        )?;
    }
    writeln!(out, "*Edges")?;
    for e in &graph.edges {
        writeln!(out, "{} {} {:.6}", e.source + 1, e.target + 1, e.weight)?;
    }
    Ok(())
}

/// Write the class partition of a graph as a Pajek .clu file.
pub fn write_clu(graph: &HeteroGraph, out: &mut dyn Write) -> Result<(), ExportError> {
    writeln!(out, "*Vertices {}", graph.n_nodes())?;
    for node in &graph.nodes {
        writeln!(out, "{}", class_number(node.class))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simgraph::{GraphEdge, GraphNode};

    fn two_node_graph() -> (HeteroGraph, Vec<Point>) {
        let graph = HeteroGraph {
            nodes: vec![
                GraphNode {
                    class: AttributeClass::Author,
                    label: "ahn s".to_string(),
                    frequency: 2,
                },
                GraphNode {
                    class: AttributeClass::Word,
                    label: "polymer".to_string(),
                    frequency: 2,
                },
            ],
            edges: vec![GraphEdge {
                source: 0,
                target: 1,
                weight: 0.5,
            }],
        };
        let positions = vec![Point::new(0.0, 0.0), Point::new(1.0, 1.0)];
        (graph, positions)
    }

    #[test]
    fn net_file_matches_expected_bytes() {
        let (graph, positions) = two_node_graph();
        let mut buf = Vec::new();
        write_pajek(&graph, &positions, &StyleSpec::default(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let expected = "*Vertices 2\n\
             1 \"ahn s\" 0.050000 0.050000 0.500000 ellipse x_fact 1.5199 y_fact 1.5199\n\
             2 \"polymer\" 0.950000 0.950000 0.500000 triangle x_fact 1.5199 y_fact 1.5199\n\
             *Edges\n\
             1 2 0.500000\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn clu_file_numbers_classes() {
        let graph = HeteroGraph {
            nodes: vec![
                GraphNode {
                    class: AttributeClass::Word,
                    label: "w".into(),
                    frequency: 1,
                },
                GraphNode {
                    class: AttributeClass::Author,
                    label: "a".into(),
                    frequency: 1,
                },
                GraphNode {
                    class: AttributeClass::Journal,
                    label: "j".into(),
                    frequency: 1,
                },
            ],
            edges: vec![],
        };
        let mut buf = Vec::new();
        write_clu(&graph, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "*Vertices 3\n2\n1\n3\n");
    }

    #[test]
    fn quotes_in_labels_are_replaced() {
        assert_eq!(quote_label("odd \"name\""), "\"odd 'name'\"");
    }

    #[test]
    fn position_count_must_match() {
        let (graph, _) = two_node_graph();
        let mut buf = Vec::new();
        let err = write_pajek(&graph, &[Point::new(0.0, 0.0)], &StyleSpec::default(), &mut buf);
        assert!(matches!(
            err,
            Err(ExportError::LengthMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn zero_frequency_node_fails_loudly() {
        let (mut graph, positions) = two_node_graph();
        graph.nodes[0].frequency = 0;
        let mut buf = Vec::new();
        assert!(matches!(
            write_pajek(&graph, &positions, &StyleSpec::default(), &mut buf),
            Err(ExportError::BadFreq { freq: 0 })
        ));
    }

    #[test]
    fn uses_lf_line_endings_only() {
        let (graph, positions) = two_node_graph();
        let mut buf = Vec::new();
        write_pajek(&graph, &positions, &StyleSpec::default(), &mut buf).unwrap();
        assert!(!buf.contains(&b'\r'));
    }
}
