//! Seeded inputs shared by the benchmarks.

use ecgraph::matching::PlainGraph;
use ecgraph::reductions::{generate, Model};
use ecgraph::Graph;

pub const SIZES: [usize; 3] = [20, 40, 60];

/// Extension of a random M-closed graph on `n` vertices.
pub fn blowup(n: usize, seed: u64) -> Graph {
    generate(&Model::MClosedBlowup { n }, seed).expect("generator accepts any n")
}

pub fn random_2ec(n: usize, seed: u64) -> Graph {
    generate(&Model::Random2ec { n, p: 0.3, parallel: 0.2 }, seed).expect("generator accepts any n")
}

/// Underlying simple graph of `g`, ignoring colours and parallel edges.
pub fn plain(g: &Graph) -> PlainGraph {
    let mut p = PlainGraph::new(g.n());
    let mut seen = std::collections::HashSet::new();
    for e in g.edges() {
        let key = (e.u.min(e.v), e.u.max(e.v));
        if seen.insert(key) {
            p.add_edge(key.0, key.1);
        }
    }
    p
}
