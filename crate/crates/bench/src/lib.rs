//! Shared fixtures for the criterion benchmarks.

use gossiplab::rng::seeded;
use gossiplab::{generate, AdjacencyGraph, EvolvingGraph, Family};

pub fn grown(family: Family, k: usize, steps: usize, seed: u64) -> EvolvingGraph {
    generate(family, k, steps, &mut seeded(seed)).expect("valid fixture parameters")
}

pub fn grown_adjacency(family: Family, k: usize, steps: usize, seed: u64) -> (EvolvingGraph, AdjacencyGraph) {
    let g = grown(family, k, steps, seed);
    let a = AdjacencyGraph::of(&g);
    (g, a)
}
