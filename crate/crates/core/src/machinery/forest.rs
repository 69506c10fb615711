use crate::error::{Error, Result};
use crate::graph::{EvolvingGraph, Family, Vertex};

/// Spanning forest of the graph at cut round `m`: each vertex born by round
/// `m` hangs off the member of its birth clique with which it shares the
/// most k-cliques (active k-cliques for k-Apollonian networks) in the graph
/// at round `m`, ties going to the earliest-born member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HighwayForest {
    pub m: usize,
    pub family: Family,
    /// `parent[v]` for `v < k + m`; `None` for the seed roots.
    pub parent: Vec<Option<Vertex>>,
    pub depth: Vec<usize>,
    pub root: Vec<Vertex>,
    /// Height of the tree rooted at each seed vertex.
    pub heights: Vec<usize>,
}

impl HighwayForest {
    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn max_height(&self) -> usize {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    /// `(child, parent)` pairs.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.parent.iter().enumerate().filter_map(|(x, p)| p.map(|p| (x, p)))
    }
}

fn check_cut(g: &EvolvingGraph, m: usize) -> Result<()> {
    if m == 0 || m > g.steps() {
        return Err(Error::CutOutOfRange { round: m, steps: g.steps() });
    }
    Ok(())
}

pub(crate) fn counts_active(family: Family) -> bool {
    family == Family::KApollonian
}

pub fn build_highway_forest(g: &EvolvingGraph, m: usize) -> Result<HighwayForest> {
    check_cut(g, m)?;
    let k = g.k();
    let size = k + m;
    let active = counts_active(g.family());
    let mut parent = vec![None; size];
    let mut depth = vec![0; size];
    let mut root: Vec<Vertex> = (0..size).collect();
    for x in k..size {
        let bc = g.birth_clique(x).expect("non-seed vertices have a birth clique");
        let mut best: Option<(usize, Vertex)> = None;
        // Members are sorted, so strict improvement keeps the earliest-born on ties.
        for &u in &g.clique(bc).members {
            let count = g.edge_clique_count_at(x, u, m, active);
            if best.is_none_or(|(c, _)| count > c) {
                best = Some((count, u));
            }
        }
        let (_, u) = best.expect("cliques are non-empty");
        parent[x] = Some(u);
        depth[x] = depth[u] + 1;
        root[x] = root[u];
    }
    let mut heights = vec![0; k];
    for v in 0..size {
        heights[root[v]] = heights[root[v]].max(depth[v]);
    }
    Ok(HighwayForest { m, family: g.family(), parent, depth, root, heights })
}

/// A forest edge whose clique count falls below the guaranteed minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForestViolation {
    pub child: Vertex,
    pub parent: Vertex,
    pub degree_at_cut: usize,
    pub clique_count: usize,
}

/// `2·bound`: `k² - k` for k-trees, `(k-1)²` for k-Apollonian networks.
/// Doubled so the half-integer bound compares exactly.
pub fn clique_bound_threshold(family: Family, k: usize) -> usize {
    match family {
        Family::KTree => k * k - k,
        Family::KApollonian => (k - 1) * (k - 1),
    }
}

/// Every forest edge `xy` with `x` born later and `deg(x) >= 2k - 1` at the
/// cut must lie in at least `(k² - k)/2` k-cliques (k-trees) or `(k-1)²/2`
/// active k-cliques (k-Apollonian networks) at the cut. Returns the edges
/// that do not.
pub fn verify_forest_clique_bound(g: &EvolvingGraph, forest: &HighwayForest) -> Vec<ForestViolation> {
    let k = g.k();
    let doubled = clique_bound_threshold(forest.family, k);
    let active = counts_active(forest.family);
    forest
        .edges()
        .filter_map(|(x, y)| {
            let degree_at_cut = g.degree_at(x, forest.m);
            if degree_at_cut < 2 * k - 1 {
                return None;
            }
            let clique_count = g.edge_clique_count_at(x, y, forest.m, active);
            (2 * clique_count < doubled).then_some(ForestViolation { child: x, parent: y, degree_at_cut, clique_count })
        })
        .collect()
}
