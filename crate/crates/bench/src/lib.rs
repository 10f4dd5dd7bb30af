//! Shared inputs for the benchmarks.

use indexsim_core::enumeration::{enumerate_connected_graphs, enumerate_trees};
use indexsim_core::{generate, Graph, ModelSpec};

/// All 853 connected graphs on seven vertices.
pub fn n7() -> Vec<Graph> {
    enumerate_connected_graphs(7).expect("n = 7 is within budget")
}

/// The eleven trees on seven vertices.
pub fn t7() -> Vec<Graph> {
    enumerate_trees(7, None).expect("n = 7 is within budget")
}

/// One network per random model, 100 vertices each.
pub fn networks(seed: u64) -> Vec<Graph> {
    [
        ModelSpec::erdos_renyi(100, 0.1, seed),
        ModelSpec::barabasi_albert(100, 3, seed),
        ModelSpec::watts_strogatz(100, 6, 0.7, seed),
    ]
    .iter()
    .map(|s| generate(s).expect("connected draw"))
    .collect()
}
