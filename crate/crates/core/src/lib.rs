//! Heterogeneous co-occurrence network mapping for bibliographic corpora.
//!
//! The crate turns tagged-field bibliographic exports into typed,
//! cosine-normalized co-occurrence networks and the artifacts needed to
//! look at them: spring-embedded layouts, principal-component summaries,
//! Pajek / GraphML / SVG output, and time-sliced animation frames.
//!
//! The pipeline runs in stages, each usable on its own:
//!
//! 1. [`wos::parse_records`] — read a tagged plain-text export into records.
//! 2. [`attributes::build_catalog`] — extract authors, title words, and
//!    journals as one typed, threshold-filtered variable set.
//! 3. [`occurrence::build_matrix`] — binary document×attribute incidence.
//! 4. [`simgraph::build_graph`] — cosine similarity among attribute columns,
//!    thresholded into an undirected graph.
//! 5. [`layout::kk_layout`] — spring-energy embedding in the plane.
//! 6. [`factors::factor_analysis`] — variance-explained summary.
//! 7. [`export`] — Pajek .net/.clu, GraphML, SVG, and frame manifests.

pub mod attributes;
pub mod export;
pub mod factors;
pub mod layout;
pub mod occurrence;
pub mod simgraph;
pub mod wos;

pub use attributes::{
    build_catalog, tokenize_title, Attribute, AttributeCatalog, AttributeClass, StopwordList,
    Thresholds,
};
pub use export::{
    build_frames, node_size, render_svg, rescale_positions, write_clu, write_graphml,
    write_pajek, Frame, FrameEdge, FrameManifest, FrameNode, NodeShape, StyleSpec,
};
pub use factors::{connected_components, factor_analysis, variance_explained, FactorResult};
pub use layout::{
    hop_distances, kk_energy, kk_gradient, kk_layout, pack_components, LayoutParams, LayoutResult,
    Point, Positions,
};
pub use occurrence::{build_matrix, slice_by_period, submatrix, OccurrenceMatrix, PeriodSlice};
pub use simgraph::{build_graph, cosine, GraphEdge, GraphNode, HeteroGraph};
pub use wos::{parse_records, recordset_stats, Record, RecordSet};

/// Any error a pipeline stage can raise, tagged by stage.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse: {0}")]
    Parse(#[from] wos::ParseError),
    #[error("matrix: {0}")]
    Shape(#[from] occurrence::ShapeError),
    #[error("slicing: {0}")]
    Slice(#[from] occurrence::SliceError),
    #[error("similarity: {0}")]
    Similarity(#[from] simgraph::SimilarityError),
    #[error("factors: {0}")]
    Factor(#[from] factors::FactorError),
    #[error("export: {0}")]
    Export(#[from] export::ExportError),
}
