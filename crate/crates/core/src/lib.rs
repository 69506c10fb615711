//! Simulation laboratory for Push-Pull rumor spreading on random k-trees and
//! random k-Apollonian networks.
//!
//! * [`urn`]: Pólya-Eggenberger and triangular urns, exact and sampled.
//! * [`graph`]: the growth processes and their clique registry.
//! * [`recursive_tree`]: random d-ary recursive trees.
//! * [`pushpull`]: the synchronous protocol.
//! * [`structure`]: clustering, diameter, draft, degrees and expansion.
//! * [`machinery`]: highway forest, fast edges, pieces, nice vertices, barriers.
//! * [`experiment`]: seeded experiment runners behind the command line tool.

pub mod error;
pub mod experiment;
pub mod graph;
pub mod io;
pub mod machinery;
pub mod pushpull;
pub mod recursive_tree;
pub mod rng;
pub mod structure;
pub mod urn;

pub use error::{Error, Result};
pub use graph::{
    generate, generate_k_apollonian, generate_k_tree, AdjacencyGraph, CliqueRecord, EvolvingGraph, Family,
    Topology, Vertex,
};
pub use pushpull::{rounds_to_fraction, run_push_pull, SpreadTrace};
pub use recursive_tree::{generate_recursive_tree, RecursiveTree};
pub use urn::{Replacement, UrnSpec, UrnState};
