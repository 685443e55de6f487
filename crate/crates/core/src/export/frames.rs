//! Animation frames over consecutive time slices.
//!
//! Each frame is built from scratch for its window: the slice's records
//! get their own attribute catalog (with slice-appropriate minimums),
//! matrix, similarity graph, and layout. Nodes carry stable string ids of
//! the form `class:label` so the same attribute can be matched across
//! frames, and an `is_new` flag marks attributes whose first dated
//! appearance in the whole corpus falls inside the frame's window.

use super::{rescale_positions, StyleSpec, VIEW_HI, VIEW_LO};
use crate::attributes::{build_catalog, tokenize_title, AttributeClass, StopwordList, Thresholds};
use crate::layout::{kk_layout, LayoutParams};
use crate::occurrence::{build_matrix, slice_by_period};
use crate::simgraph::build_graph;
use crate::wos::Record;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// One node of one frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameNode {
    /// Stable cross-frame identifier, `class:label`.
    pub id: String,
    pub class: String,
    pub label: String,
    /// Documents carrying the attribute within this frame's window.
    pub frequency: usize,
    /// Viewport coordinates in [0.05, 0.95].
    pub x: f64,
    pub y: f64,
    pub size: f64,
    /// True when the attribute's first dated occurrence in the whole
    /// corpus falls inside this frame's window.
    pub is_new: bool,
}

/// One edge of one frame, endpoints by node id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameEdge {
    pub source: String,
    pub target: String,
    pub weight: f64,
}

/// One time slice rendered as a graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    /// Inclusive human-readable window label, e.g. "1975-1979".
    pub period: String,
    pub start: i32,
    pub end: i32,
    pub records: usize,
    pub nodes: Vec<FrameNode>,
    pub edges: Vec<FrameEdge>,
}

/// A full animation: one frame per window, in order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameManifest {
    pub cosine_threshold: f64,
    /// Records without a year, excluded from every frame.
    pub undated_records: usize,
    pub frames: Vec<Frame>,
}

/// Build an animation manifest over `[start, end)` in windows of `width`.
///
/// Thresholds apply per slice (frequencies are counted within each
/// window, not corpus-wide). An empty window yields an empty frame.
#[allow(clippy::too_many_arguments)]
pub fn build_frames(
    records: &[Record],
    start: i32,
    width: i32,
    end: i32,
    threshold: f64,
    thresholds: &Thresholds,
    stopwords: &StopwordList,
    layout_params: &LayoutParams,
    style: &StyleSpec,
) -> Result<FrameManifest, crate::Error> {
    let (slices, undated) = slice_by_period(records, start, width, end)?;
    let first_seen = first_years(records, thresholds, stopwords);

    let mut frames = Vec::with_capacity(slices.len());
    for slice in &slices {
        let subset: Vec<Record> = slice
            .record_indices
            .iter()
            .map(|&i| records[i].clone())
            .collect();
        let catalog = build_catalog(&subset, thresholds, stopwords);
        let matrix = build_matrix(&catalog, &subset);
        let graph = build_graph(&matrix, threshold)?;
        let layout = kk_layout(&graph, layout_params);
        let scaled = rescale_positions(&layout.positions, VIEW_LO, VIEW_HI);

        let mut nodes = Vec::with_capacity(graph.n_nodes());
        for (i, node) in graph.nodes.iter().enumerate() {
            let size = style.size_of(node.frequency)?;
            let key = (node.class, node.label.clone());
            let is_new = first_seen
                .get(&key)
                .is_some_and(|&y| y >= slice.start && y < slice.end);
            nodes.push(FrameNode {
                id: node_id(node.class, &node.label),
                class: node.class.name().to_string(),
                label: node.label.clone(),
                frequency: node.frequency,
                x: scaled[i].x,
                y: scaled[i].y,
                size,
                is_new,
            });
        }
        let edges = graph
            .edges
            .iter()
            .map(|e| FrameEdge {
                source: nodes[e.source].id.clone(),
                target: nodes[e.target].id.clone(),
                weight: e.weight,
            })
            .collect();
        frames.push(Frame {
            period: slice.label(),
            start: slice.start,
            end: slice.end,
            records: subset.len(),
            nodes,
            edges,
        });
    }
    Ok(FrameManifest {
        cosine_threshold: threshold,
        undated_records: undated.len(),
        frames,
    })
}

/// Stable cross-frame node identifier.
pub(crate) fn node_id(class: AttributeClass, label: &str) -> String {
    format!("{}:{}", class.name(), label)
}

/// Earliest dated appearance of every attribute in the corpus, under the
/// same extraction rules (exclusions, tokenization) used for catalogs.
fn first_years(
    records: &[Record],
    thresholds: &Thresholds,
    stopwords: &StopwordList,
) -> HashMap<(AttributeClass, String), i32> {
    let excluded: std::collections::HashSet<&str> = thresholds
        .exclude_authors
        .iter()
        .map(|s| s.as_str())
        .collect();
    let mut first: HashMap<(AttributeClass, String), i32> = HashMap::new();
    for rec in records {
        let Some(year) = rec.year else { continue };
        let mut note = |class: AttributeClass, label: String| {
            first
                .entry((class, label))
                .and_modify(|y| *y = (*y).min(year))
                .or_insert(year);
        };
        for a in &rec.authors {
            if !excluded.contains(a.as_str()) {
                note(AttributeClass::Author, a.clone());
            }
        }
        for w in tokenize_title(&rec.title, stopwords) {
            note(AttributeClass::Word, w);
        }
        if !rec.journal.is_empty() {
            note(AttributeClass::Journal, rec.journal.clone());
        }
    }
    first
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attributes::animation_thresholds;

    fn rec(id: usize, authors: &[&str], title: &str, journal: &str, year: Option<i32>) -> Record {
        Record {
            id,
            authors: authors.iter().map(|s| s.to_string()).collect(),
            title: title.to_string(),
            journal: journal.to_string(),
            year,
        }
    }

    /// Two windows; "plasma" spans both, "coastal" only appears in the second.
    fn corpus() -> Vec<Record> {
        vec![
            rec(0, &["ahn s"], "Plasma Jets", "ion letters", Some(1980)),
            rec(1, &["ahn s"], "Plasma Shielding", "ion letters", Some(1981)),
            rec(2, &["baker t"], "Plasma Etching", "ion letters", Some(1985)),
            rec(3, &["baker t"], "Coastal Plasma Sensing", "ion letters", Some(1986)),
            rec(4, &["baker t"], "Coastal Mapping", "ion letters", Some(1987)),
            rec(5, &["cho d"], "Undated Coastal Work", "ion letters", None),
        ]
    }

    fn manifest() -> FrameManifest {
        build_frames(
            &corpus(),
            1980,
            5,
            1990,
            0.1,
            &animation_thresholds(),
            &StopwordList::default_english(),
            &LayoutParams::default(),
            &StyleSpec::default(),
        )
        .unwrap()
    }

    #[test]
    fn frames_cover_all_windows() {
        let m = manifest();
        assert_eq!(m.frames.len(), 2);
        assert_eq!(m.frames[0].period, "1980-1984");
        assert_eq!(m.frames[1].period, "1985-1989");
        assert_eq!(m.frames[0].records, 2);
        assert_eq!(m.frames[1].records, 3);
        assert_eq!(m.undated_records, 1);
    }

    #[test]
    fn node_ids_are_stable_across_frames() {
        let m = manifest();
        let in_frame = |f: usize, id: &str| m.frames[f].nodes.iter().any(|n| n.id == id);
        assert!(in_frame(0, "word:plasma"));
        assert!(in_frame(1, "journal:ion letters"));
        assert!(in_frame(0, "journal:ion letters"));
    }

    #[test]
    fn novelty_follows_first_dated_appearance() {
        let m = manifest();
        let find = |f: usize, id: &str| {
            m.frames[f]
                .nodes
                .iter()
                .find(|n| n.id == id)
                .unwrap_or_else(|| panic!("{id} missing from frame {f}"))
        };
        // first seen 1980, inside frame 0's window
        assert!(find(0, "word:plasma").is_new);
        // the journal also débuts in frame 0
        assert!(find(0, "journal:ion letters").is_new);
        // carried over into frame 1: not new there
        assert!(!find(1, "journal:ion letters").is_new);
        // "coastal" first dated 1986 → new in frame 1 (undated record ignored)
        assert!(find(1, "word:coastal").is_new);
    }

    #[test]
    fn frequencies_are_per_window() {
        let m = manifest();
        let plasma0 = m.frames[0].nodes.iter().find(|n| n.id == "word:plasma").unwrap();
        let plasma1 = m.frames[1].nodes.iter().find(|n| n.id == "word:plasma").unwrap();
        assert_eq!(plasma0.frequency, 2);
        assert_eq!(plasma1.frequency, 2);
    }

    #[test]
    fn slice_thresholds_prune_rare_attributes() {
        let m = manifest();
        // "ahn s" appears twice in frame 0 (kept), zero times in frame 1
        assert!(m.frames[0].nodes.iter().any(|n| n.id == "author:ahn s"));
        assert!(!m.frames[1].nodes.iter().any(|n| n.id == "author:ahn s"));
        // "cho d" only backs an undated record: nowhere
        assert!(!m
            .frames
            .iter()
            .any(|f| f.nodes.iter().any(|n| n.id == "author:cho d")));
    }

    #[test]
    fn empty_window_yields_empty_frame() {
        let records = vec![rec(0, &["ahn s"], "Plasma Jets", "ion letters", Some(1980))];
        let m = build_frames(
            &records,
            1980,
            5,
            1990,
            0.2,
            &animation_thresholds(),
            &StopwordList::default_english(),
            &LayoutParams::default(),
            &StyleSpec::default(),
        )
        .unwrap();
        assert_eq!(m.frames.len(), 2);
        assert!(m.frames[1].nodes.is_empty());
        assert!(m.frames[1].edges.is_empty());
        assert_eq!(m.frames[1].records, 0);
    }

    #[test]
    fn edges_reference_existing_node_ids() {
        let m = manifest();
        for frame in &m.frames {
            let ids: std::collections::HashSet<&str> =
                frame.nodes.iter().map(|n| n.id.as_str()).collect();
            assert!(!frame.edges.is_empty(), "frame {} has edges", frame.period);
            for e in &frame.edges {
                assert!(ids.contains(e.source.as_str()));
                assert!(ids.contains(e.target.as_str()));
                assert!(e.weight > 0.0);
            }
        }
    }

    #[test]
    fn coordinates_and_sizes_are_in_range() {
        let m = manifest();
        for frame in &m.frames {
            for n in &frame.nodes {
                assert!((0.05..=0.95).contains(&n.x), "{}", n.id);
                assert!((0.05..=0.95).contains(&n.y), "{}", n.id);
                assert!(n.size >= 4.0);
            }
        }
    }

    #[test]
    fn manifest_serializes_round_trip() {
        let m = manifest();
        let json = serde_json::to_string(&m).unwrap();
        let back: FrameManifest = serde_json::from_str(&json).unwrap();
        assert_eq!(m, back);
    }
}
