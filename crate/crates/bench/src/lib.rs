//! Fixtures shared by the benchmark suite: the bundled corpus and
//! seeded random graphs of controllable size.

use heteromap::{AttributeClass, GraphEdge, GraphNode, HeteroGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The 65-record fixture corpus as text.
pub fn fixture_text() -> String {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../testdata/corpus65.txt");
    std::fs::read_to_string(path).expect("fixture corpus should exist")
}

/// A connected graph: a ring of `n` nodes plus `extra` random chords.
pub fn ring_with_chords(n: usize, extra: usize, seed: u64) -> HeteroGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
    while edges.len() < n + extra {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a != b && !edges.contains(&(a.min(b), a.max(b))) {
            edges.push((a.min(b), a.max(b)));
        }
    }
    HeteroGraph {
        nodes: (0..n)
            .map(|i| GraphNode {
                class: AttributeClass::Word,
                label: format!("n{i}"),
                frequency: 1 + i % 7,
            })
            .collect(),
        edges: edges
            .into_iter()
            .map(|(source, target)| GraphEdge {
                source,
                target,
                weight: 1.0,
            })
            .collect(),
    }
}
