use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Topology, Vertex};
use crate::structure::has_common_neighbor_with;

use super::HighwayForest;

/// An edge is fast when an endpoint, or a common neighbour of both
/// endpoints, has degree at most `tau`. Degrees are those of `g`.
pub fn is_fast_edge<G: Topology + ?Sized>(g: &G, u: Vertex, v: Vertex, tau: usize) -> bool {
    g.degree(u) <= tau || g.degree(v) <= tau || has_common_neighbor_with(g, u, v, |w| g.degree(w) <= tau)
}

pub fn classify_fast_edges<G>(g: &G, edges: &[(Vertex, Vertex)], tau: usize) -> Result<Vec<bool>>
where
    G: Topology + Sync + ?Sized,
{
    for &(u, v) in edges {
        g.check_vertex(u)?;
        g.check_vertex(v)?;
        if !g.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
    }
    Ok(edges.par_iter().map(|&(u, v)| is_fast_edge(g, u, v, tau)).collect())
}

pub fn forest_edges(forest: &HighwayForest) -> Vec<(Vertex, Vertex)> {
    forest.edges().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::AdjacencyGraph;

    #[test]
    fn triangle() {
        let g = AdjacencyGraph::complete(3);
        let edges = [(0, 1), (0, 2), (1, 2)];
        assert_eq!(classify_fast_edges(&g, &edges, 1).unwrap(), vec![false; 3]);
        assert_eq!(classify_fast_edges(&g, &edges, 2).unwrap(), vec![true; 3]);
    }

    #[test]
    fn common_neighbor_makes_fast() {
        // Hub edge 0-1 with a low-degree common neighbour 2.
        let mut edges = vec![(0, 1), (0, 2), (1, 2)];
        for leaf in 3..8 {
            edges.push((0, leaf));
            edges.push((1, leaf + 5));
        }
        let g = AdjacencyGraph::from_edges(13, &edges).unwrap();
        assert!(is_fast_edge(&g, 0, 1, 2));
        assert!(!is_fast_edge(&g, 0, 1, 1));
    }

    #[test]
    fn rejects_non_edges() {
        let g = AdjacencyGraph::path(3);
        assert!(matches!(classify_fast_edges(&g, &[(0, 2)], 5), Err(Error::NotAnEdge(0, 2))));
    }
}
