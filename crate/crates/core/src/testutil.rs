//! Shared strategies and helpers for unit tests.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::OrientedGraph;

/// Oriented graphs on at most `max_n` vertices, every pair independently
/// absent / forward / backward.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = OrientedGraph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0u8..3, n * n.saturating_sub(1) / 2)
            .prop_map(move |codes| graph_from_codes(n, &codes))
    })
}

pub fn graph_from_codes(n: usize, codes: &[u8]) -> OrientedGraph {
    let mut k = 0;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            match codes[k] {
                1 => edges.push((u, v)),
                2 => edges.push((v, u)),
                _ => {}
            }
            k += 1;
        }
    }
    OrientedGraph::from_edges(n, edges).unwrap()
}

/// Seeded random oriented graph; `p_edge` is the chance a pair is oriented.
pub fn random_graph(n: usize, p_edge: f64, seed: u64) -> OrientedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let codes: Vec<u8> = (0..n * n.saturating_sub(1) / 2)
        .map(|_| if rng.gen_bool(p_edge) { 1 + rng.gen_range(0..2) } else { 0 })
        .collect();
    graph_from_codes(n, &codes)
}
