#![allow(dead_code)]

use ecgraph::reductions::{generate, Model};
use ecgraph::structure::{blow_up, m_closure, ClosurePolicy};
use ecgraph::{Colour, Graph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn colour(red: bool) -> Colour {
    if red {
        Colour::Red
    } else {
        Colour::Blue
    }
}

/// Multigraph on `n` vertices from raw `(u, v, red)` triples; loops dropped.
pub fn from_raw(n: usize, raw: &[(usize, usize, bool)]) -> Graph {
    let edges: Vec<_> = raw
        .iter()
        .filter(|&&(u, v, _)| u % n != v % n)
        .map(|&(u, v, r)| (u % n, v % n, colour(r)))
        .collect();
    Graph::from_indexed(n, &edges).unwrap()
}

/// Random multigraphs with `2..=max_n` vertices and at most `max_m` edges.
pub fn small_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, proptest::collection::vec((0..max_n, 0..max_n, any::<bool>()), 0..=max_m))
        .prop_map(|(n, raw)| from_raw(n, &raw))
}

pub fn seeded_graph(seed: u64, n: usize, max_m: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.gen_range(0..=max_m);
    let raw: Vec<_> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_bool(0.5))).collect();
    from_raw(n, &raw)
}

/// Blow-up of the M-closure of a random base with total size at most `max_n`.
pub fn seeded_blowup(seed: u64, max_n: usize) -> Graph {
    let n = 2 + (seed as usize) % (max_n - 1);
    generate(&Model::MClosedBlowup { n }, seed).unwrap()
}

/// Blow-ups with more repeated vertices than the stock generator produces.
pub fn heavy_blowup(seed: u64, k: usize, extra: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = rng.gen_range(0.3..0.9);
    let parallel = rng.gen_range(0.0..0.6);
    let base = generate(&Model::Random2ec { n: k, p, parallel }, seed).unwrap();
    let closed = m_closure(&base, ClosurePolicy::SeededRandom(rng.gen()));
    let mut mult = vec![1; k];
    for _ in 0..extra {
        mult[rng.gen_range(0..k)] += 1;
    }
    blow_up(&closed, &mult).unwrap().graph
}

/// Random complete multipartite 2-edge-colouring with `parts` sizes.
pub fn seeded_multipartite(seed: u64, parts: &[usize]) -> Graph {
    generate(&Model::CompleteMultipartite { parts: parts.to_vec() }, seed).unwrap()
}

pub fn random_parts(rng: &mut ChaCha8Rng, max_n: usize) -> Vec<usize> {
    loop {
        let k = rng.gen_range(2..=4);
        let parts: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=3)).collect();
        if parts.iter().sum::<usize>() <= max_n {
            return parts;
        }
    }
}
