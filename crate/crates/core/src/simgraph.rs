//! Cosine-normalized similarity graphs over attribute columns.
//!
//! Attributes become nodes; two attributes are linked when the cosine of
//! their binary occurrence columns reaches a threshold. For binary columns
//! the cosine is `c / sqrt(f_i · f_j)` with `c` the number of documents
//! carrying both attributes and `f` the column frequencies, which is how
//! it is computed here — column pairs never see floating-point norms, so
//! identical columns yield exactly 1.0.

use crate::attributes::AttributeClass;
use crate::occurrence::OccurrenceMatrix;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SimilarityError {
    #[error("cosine undefined for an all-zero vector")]
    ZeroVector,
    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("threshold {value} outside [0, 1]")]
    BadThreshold { value: f64 },
}

/// One attribute as a graph node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphNode {
    pub class: AttributeClass,
    pub label: String,
    /// Documents carrying the attribute within the source matrix.
    pub frequency: usize,
}

/// Undirected weighted edge; `source < target` always holds.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphEdge {
    pub source: usize,
    pub target: usize,
    /// Cosine similarity of the two columns, in (0, 1].
    pub weight: f64,
}

/// Heterogeneous similarity graph over a matrix's attribute columns.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HeteroGraph {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

impl HeteroGraph {
    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Neighbor lists indexed by node, each sorted ascending.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.source].push(e.target);
            adj[e.target].push(e.source);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}

/// Cosine similarity of two binary vectors.
///
/// Both vectors must be the same length and each must contain at least
/// one set cell. Cells are treated as set when nonzero.
pub fn cosine(u: &[u8], v: &[u8]) -> Result<f64, SimilarityError> {
    if u.len() != v.len() {
        return Err(SimilarityError::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let mut both = 0usize;
    let mut nu = 0usize;
    let mut nv = 0usize;
    for (&a, &b) in u.iter().zip(v) {
        let a = (a != 0) as usize;
        let b = (b != 0) as usize;
        nu += a;
        nv += b;
        both += a & b;
    }
    if nu == 0 || nv == 0 {
        return Err(SimilarityError::ZeroVector);
    }
    Ok(both as f64 / ((nu * nv) as f64).sqrt())
}

/// Build the similarity graph of a matrix at a cosine threshold.
///
/// Every column becomes a node (isolated ones included) with its in-matrix
/// frequency. An edge joins columns `i < j` when their cosine is positive
/// and at least `threshold` — an exact comparison, no tolerance slack, so
/// a pair sitting exactly on the threshold is kept.
pub fn build_graph(
    matrix: &OccurrenceMatrix,
    threshold: f64,
) -> Result<HeteroGraph, SimilarityError> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(SimilarityError::BadThreshold { value: threshold });
    }
    let n = matrix.n_attrs();
    let mut freq = vec![0usize; n];
    let mut co = vec![0usize; n * n];
    for row in &matrix.rows {
        let set: Vec<usize> = (0..n).filter(|&j| row[j] != 0).collect();
        for &j in &set {
            freq[j] += 1;
        }
        for (a, &i) in set.iter().enumerate() {
            for &j in &set[a + 1..] {
                co[i * n + j] += 1;
            }
        }
    }

    let nodes = matrix
        .attributes
        .iter()
        .enumerate()
        .map(|(j, attr)| GraphNode {
            class: attr.class,
            label: attr.label.clone(),
            frequency: freq[j],
        })
        .collect();

    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = co[i * n + j];
            if c == 0 {
                continue;
            }
            let w = c as f64 / ((freq[i] * freq[j]) as f64).sqrt();
            if w >= threshold {
                edges.push(GraphEdge {
                    source: i,
                    target: j,
                    weight: w,
                });
            }
        }
    }
    Ok(HeteroGraph { nodes, edges })
}
