use crate::error::{Error, Result};
use crate::graph::{EvolvingGraph, Family, Topology, Vertex};

/// Split of the vertices born after the cut round `m` by the selectable
/// clique of the round-`m` graph they grew out of.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceDecomposition {
    pub m: usize,
    /// Clique id of each piece's base clique.
    pub base_cliques: Vec<usize>,
    /// Earliest-born member of each base clique.
    pub representatives: Vec<Vertex>,
    /// Piece index of each vertex; `None` for vertices born by round `m`.
    pub piece_of: Vec<Option<usize>>,
    /// Number of modern vertices in each piece.
    pub modern_counts: Vec<usize>,
}

impl PieceDecomposition {
    pub fn piece_count(&self) -> usize {
        self.base_cliques.len()
    }

    /// Vertices of piece `j`, base clique included.
    pub fn vertex_count(&self, j: usize, k: usize) -> usize {
        k + self.modern_counts[j]
    }

    pub fn is_modern(&self, v: Vertex) -> bool {
        self.piece_of[v].is_some()
    }
}

pub fn decompose_pieces(g: &EvolvingGraph, m: usize) -> Result<PieceDecomposition> {
    if m > g.steps() {
        return Err(Error::CutOutOfRange { round: m, steps: g.steps() });
    }
    let k = g.k();
    let limit = g.clique_limit(m);
    let base_cliques: Vec<usize> = match g.family() {
        Family::KTree => (0..limit).collect(),
        Family::KApollonian => g.active_at(m),
    };
    let mut index = vec![usize::MAX; limit];
    for (j, &c) in base_cliques.iter().enumerate() {
        index[c] = j;
    }
    let representatives = base_cliques.iter().map(|&c| g.clique(c).members[0]).collect();
    let mut piece_of = vec![None; g.vertex_count()];
    let mut modern_counts = vec![0; base_cliques.len()];
    for v in g.vertices_at(m)..g.vertex_count() {
        let bc = g.birth_clique(v).expect("modern vertices have a birth clique");
        let j = if bc < limit {
            index[bc]
        } else {
            let creator = g.clique_creator(bc).expect("only the seed clique lacks a creator");
            piece_of[creator].expect("a post-cut clique is created by a modern vertex")
        };
        if j == usize::MAX {
            return Err(Error::Internal(format!("vertex {v} grew from a retired clique")));
        }
        piece_of[v] = Some(j);
        modern_counts[j] += 1;
    }
    debug_assert_eq!(base_cliques.len(), g.family().selectable_cliques(k, m));
    Ok(PieceDecomposition { m, base_cliques, representatives, piece_of, modern_counts })
}
