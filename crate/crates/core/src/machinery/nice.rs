use serde::Serialize;

use crate::graph::{EvolvingGraph, Topology, Vertex};

use super::fast::is_fast_edge;
use super::{HighwayForest, PieceDecomposition};

/// Nice/bad classification for one `(m, τ)` choice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NiceReport {
    pub tau: usize,
    /// Per vertex.
    pub nice: Vec<bool>,
    /// Per piece.
    pub piece_nice: Vec<bool>,
    /// Nice modern vertices.
    pub sigma: Vec<Vertex>,
    pub bad_count: usize,
}

impl NiceReport {
    pub fn bad_fraction(&self) -> f64 {
        self.bad_count as f64 / self.nice.len() as f64
    }
}

/// A traditional vertex is nice when its highway-forest path to a seed
/// consists of fast edges. A piece is nice when its representative is nice
/// and all its modern vertices have degree at most `tau`; modern vertices
/// inherit the status of their piece.
pub fn classify_nice(
    g: &EvolvingGraph,
    forest: &HighwayForest,
    pieces: &PieceDecomposition,
    tau: usize,
) -> NiceReport {
    let n = g.vertex_count();
    let traditional = forest.vertex_count();
    let mut nice = vec![false; n];
    for v in 0..traditional {
        // Parents are born earlier, so their status is already final.
        nice[v] = match forest.parent[v] {
            None => true,
            Some(p) => nice[p] && is_fast_edge(g, v, p, tau),
        };
    }
    let mut low_degree = vec![true; pieces.piece_count()];
    for v in traditional..n {
        if let Some(j) = pieces.piece_of[v] {
            if g.degree(v) > tau {
                low_degree[j] = false;
            }
        }
    }
    let piece_nice: Vec<bool> = (0..pieces.piece_count())
        .map(|j| low_degree[j] && nice[pieces.representatives[j]])
        .collect();
    let mut sigma = Vec::new();
    for v in traditional..n {
        if let Some(j) = pieces.piece_of[v] {
            nice[v] = piece_nice[j];
            if nice[v] {
                sigma.push(v);
            }
        }
    }
    let bad_count = nice.iter().filter(|&&b| !b).count();
    NiceReport { tau, nice, piece_nice, sigma, bad_count }
}
