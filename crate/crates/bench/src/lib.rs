//! Shared fixtures for the criterion benches.

use maxgenus::construct::{generate_prefix, GenerateMode};
use maxgenus::{Embedding, Graph};

pub fn complete(p: u32, q: u32) -> Graph {
    Graph::complete_bipartite(p, q).expect("non-empty parts")
}

/// One-face embeddings of `K_{2,n}` from the pair stages, for stage benches.
pub fn pair_outputs(n: u32) -> Vec<Embedding> {
    generate_prefix(n, 2, GenerateMode::Exhaustive { budget: 1_000_000 })
        .expect("small n")
        .into_iter()
        .map(|(_, e)| e)
        .collect()
}
