//! Graph representations and the random k-tree / k-Apollonian processes.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Largest vertex count any generator will build.
pub const MAX_VERTICES: usize = 1 << 31;

/// Read access to an undirected simple graph.
///
/// Implementors keep every neighbour list sorted ascending; several
/// algorithms rely on this for merges and binary searches.
pub trait Topology {
    fn vertex_count(&self) -> usize;
    fn neighbors(&self, v: Vertex) -> &[Vertex];

    fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    fn edge_count(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count() && self.neighbors(u).binary_search(&v).is_ok()
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }
}

/// Whether every vertex is reachable from vertex 0.
pub fn is_connected<G: Topology + ?Sized>(g: &G) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    reached == n
}

/// Plain adjacency lists, used for hand-built test graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyGraph {
    adjacency: Vec<Vec<Vertex>>,
}

impl AdjacencyGraph {
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::UnknownVertex(u));
            }
            if v >= n {
                return Err(Error::UnknownVertex(v));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(AdjacencyGraph { adjacency })
    }

    pub fn complete(n: usize) -> Self {
        let adjacency = (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect();
        AdjacencyGraph { adjacency }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges).expect("path edges are valid")
    }

    /// Vertex 0 is the centre.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Self::from_edges(leaves + 1, &edges).expect("star edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n > 2 {
            edges.push((n - 1, 0));
        }
        Self::from_edges(n, &edges).expect("cycle edges are valid")
    }

    pub fn of<G: Topology + ?Sized>(g: &G) -> Self {
        let adjacency = (0..g.vertex_count()).map(|v| g.neighbors(v).to_vec()).collect();
        AdjacencyGraph { adjacency }
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for (u, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }
}

impl Topology for AdjacencyGraph {
    fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    #[serde(rename = "ktree")]
    KTree,
    #[serde(rename = "apollonian")]
    KApollonian,
}

impl Family {
    pub fn min_k(self) -> usize {
        match self {
            Family::KTree => 2,
            Family::KApollonian => 3,
        }
    }

    /// Cliques that can still be chosen after `steps` growth steps.
    pub fn selectable_cliques(self, k: usize, steps: usize) -> usize {
        match self {
            Family::KTree => k * steps + 1,
            Family::KApollonian => (k - 1) * steps + 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::KTree => "ktree",
            Family::KApollonian => "apollonian",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ktree" => Ok(Family::KTree),
            "apollonian" => Ok(Family::KApollonian),
            other => Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        }
    }
}

/// A k-clique in the registry of an [`EvolvingGraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueRecord {
    /// Sorted vertex ids.
    pub members: Vec<Vertex>,
    pub created_round: usize,
    /// Round in which the clique was chosen and deactivated (k-Apollonian only).
    pub retired_round: Option<usize>,
}

impl CliqueRecord {
    pub fn is_active(&self) -> bool {
        self.retired_round.is_none()
    }

    /// Whether the clique exists and is active at the end of `round`.
    pub fn active_at(&self, round: usize) -> bool {
        self.created_round <= round && self.retired_round.is_none_or(|r| r > round)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

/// A graph grown by the random k-tree or k-Apollonian process, with its
/// full birth history.
///
/// Vertex ids are birth indices: `0..k` form the seed clique and the vertex
/// born in round `t >= 1` has id `k + t - 1`. Clique ids are creation
/// indices: clique 0 is the seed clique and round `t` creates cliques
/// `1 + k(t-1) .. 1 + kt`, so the cliques existing at the end of round `m`
/// are exactly the ids below `1 + km`.
#[derive(Debug, Clone)]
pub struct EvolvingGraph {
    family: Family,
    k: usize,
    adjacency: Vec<Vec<Vertex>>,
    cliques: Vec<CliqueRecord>,
    vertex_cliques: Vec<Vec<usize>>,
    birth_clique: Vec<Option<usize>>,
    // Selection pool for the k-Apollonian process; unused for k-trees.
    active: Vec<usize>,
    active_pos: Vec<usize>,
}

const NOT_ACTIVE: usize = usize::MAX;

impl EvolvingGraph {
    /// `G(0)` / `A(0)`: a single k-clique.
    pub fn seed(family: Family, k: usize) -> Result<Self> {
        if k < family.min_k() {
            return Err(Error::InvalidParameter(format!(
                "{family} needs k >= {}, got {k}",
                family.min_k()
            )));
        }
        let adjacency = (0..k).map(|u| (0..k).filter(|&v| v != u).collect()).collect();
        let mut g = EvolvingGraph {
            family,
            k,
            adjacency,
            cliques: vec![CliqueRecord { members: (0..k).collect(), created_round: 0, retired_round: None }],
            vertex_cliques: vec![vec![0]; k],
            birth_clique: vec![None; k],
            active: Vec::new(),
            active_pos: Vec::new(),
        };
        if family == Family::KApollonian {
            g.active.push(0);
            g.active_pos.push(0);
        }
        Ok(g)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Growth steps performed so far.
    pub fn steps(&self) -> usize {
        self.adjacency.len() - self.k
    }

    pub fn cliques(&self) -> &[CliqueRecord] {
        &self.cliques
    }

    pub fn clique(&self, id: usize) -> &CliqueRecord {
        &self.cliques[id]
    }

    /// Clique ids containing `v`, ascending.
    pub fn cliques_of(&self, v: Vertex) -> &[usize] {
        &self.vertex_cliques[v]
    }

    pub fn birth_clique(&self, v: Vertex) -> Option<usize> {
        self.birth_clique[v]
    }

    pub fn round_of_birth(&self, v: Vertex) -> usize {
        if v < self.k {
            0
        } else {
            v - self.k + 1
        }
    }

    pub fn is_seed(&self, v: Vertex) -> bool {
        v < self.k
    }

    /// The vertex whose birth created clique `id`; `None` for the seed clique.
    pub fn clique_creator(&self, id: usize) -> Option<Vertex> {
        (id > 0).then(|| self.k + (id - 1) / self.k)
    }

    /// Number of vertices present at the end of `round`.
    pub fn vertices_at(&self, round: usize) -> usize {
        (self.k + round).min(self.vertex_count())
    }

    /// Number of registry entries present at the end of `round`.
    pub fn clique_limit(&self, round: usize) -> usize {
        (1 + self.k * round).min(self.cliques.len())
    }

    /// Degree of `v` in the graph as it stood at the end of `round`.
    pub fn degree_at(&self, v: Vertex, round: usize) -> usize {
        let limit = self.vertices_at(round);
        if v >= limit {
            return 0;
        }
        self.adjacency[v].partition_point(|&w| w < limit)
    }

    /// Number of cliques that can currently be chosen.
    pub fn selectable_count(&self) -> usize {
        match self.family {
            Family::KTree => self.cliques.len(),
            Family::KApollonian => self.active.len(),
        }
    }

    pub fn active_clique_count(&self) -> usize {
        match self.family {
            Family::KTree => self.cliques.len(),
            Family::KApollonian => self.active.len(),
        }
    }

    /// Ids of the cliques that can currently be chosen, in pool order.
    pub fn selectable(&self) -> Vec<usize> {
        match self.family {
            Family::KTree => (0..self.cliques.len()).collect(),
            Family::KApollonian => self.active.clone(),
        }
    }

    /// A uniformly random selectable clique.
    pub fn choose_clique<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        match self.family {
            Family::KTree => rng.random_range(0..self.cliques.len()),
            Family::KApollonian => self.active[rng.random_range(0..self.active.len())],
        }
    }

    pub fn is_selectable(&self, id: usize) -> bool {
        match self.family {
            Family::KTree => id < self.cliques.len(),
            Family::KApollonian => self.active_pos.get(id).is_some_and(|&p| p != NOT_ACTIVE),
        }
    }

    /// Performs one growth step: a new vertex joined to clique `id`.
    /// Returns the new vertex.
    pub fn attach(&mut self, id: usize) -> Result<Vertex> {
        if !self.is_selectable(id) {
            return Err(Error::InvalidClique(format!("clique {id} cannot be chosen")));
        }
        let x = self.adjacency.len();
        if x + 1 > MAX_VERTICES {
            return Err(Error::TooLarge { limit: MAX_VERTICES });
        }
        let round = self.steps() + 1;
        let members = self.cliques[id].members.clone();
        for &u in &members {
            // x is larger than every existing id, so lists stay sorted.
            self.adjacency[u].push(x);
        }
        self.adjacency.push(members.clone());
        self.birth_clique.push(Some(id));
        self.vertex_cliques.push(Vec::with_capacity(self.k));

        if self.family == Family::KApollonian {
            self.cliques[id].retired_round = Some(round);
            let pos = self.active_pos[id];
            self.active.swap_remove(pos);
            if let Some(&moved) = self.active.get(pos) {
                self.active_pos[moved] = pos;
            }
            self.active_pos[id] = NOT_ACTIVE;
        }

        for skip in 0..self.k {
            let mut clique: Vec<Vertex> = members
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &u)| u)
                .collect();
            clique.push(x);
            let cid = self.cliques.len();
            for &u in &clique {
                self.vertex_cliques[u].push(cid);
            }
            self.cliques.push(CliqueRecord { members: clique, created_round: round, retired_round: None });
            if self.family == Family::KApollonian {
                self.active_pos.push(self.active.len());
                self.active.push(cid);
            }
        }
        Ok(x)
    }

    /// Number of registry cliques containing `v`.
    pub fn cliques_containing(&self, v: Vertex, active_only: bool) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.vertex_cliques[v]
            .iter()
            .filter(|&&c| !active_only || self.cliques[c].is_active())
            .count())
    }

    /// Number of registry cliques containing the edge `uv`: `N(uv)`, or the
    /// active count `N*(uv)` when `active_only` is set.
    ///
    /// For k = 2 every clique is an edge, so the count is 1 and refers to
    /// the edge's own clique.
    pub fn cliques_containing_edge(&self, u: Vertex, v: Vertex, active_only: bool) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let round = self.steps();
        Ok(self.edge_clique_count_at(u, v, round, active_only))
    }

    /// `N(uv)` (or `N*(uv)`) measured in the graph at the end of `round`.
    pub fn edge_clique_count_at(&self, u: Vertex, v: Vertex, round: usize, active_only: bool) -> usize {
        let limit = self.clique_limit(round);
        let (a, b) = if self.vertex_cliques[u].len() <= self.vertex_cliques[v].len() { (u, v) } else { (v, u) };
        self.vertex_cliques[a]
            .iter()
            .take_while(|&&c| c < limit)
            .filter(|&&c| {
                let rec = &self.cliques[c];
                rec.contains(b) && (!active_only || rec.active_at(round))
            })
            .count()
    }

    /// Finds the clique id with exactly these members, if registered.
    pub fn find_clique(&self, members: &[Vertex]) -> Option<usize> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        let first = *sorted.first()?;
        if first >= self.vertex_count() {
            return None;
        }
        self.vertex_cliques[first]
            .iter()
            .copied()
            .find(|&c| self.cliques[c].members == sorted)
    }

    pub fn degree_of(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.degree(v))
    }

    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        degree_histogram(self)
    }

    /// Ids of the registry cliques active at the end of `round`.
    pub fn active_at(&self, round: usize) -> Vec<usize> {
        let limit = self.clique_limit(round);
        (0..limit).filter(|&c| self.cliques[c].active_at(round)).collect()
    }

    /// Rebuilds a graph by replaying births from an adjacency structure whose
    /// vertex ids are birth indices.
    pub fn replay(family: Family, k: usize, adjacency: &[Vec<Vertex>]) -> Result<Self> {
        let mut g = Self::seed(family, k)?;
        if adjacency.len() < k {
            return Err(Error::InvalidParameter("fewer vertices than the seed clique".into()));
        }
        let mut index: HashMap<Vec<Vertex>, usize> = HashMap::new();
        index.insert(g.cliques[0].members.clone(), 0);
        for x in k..adjacency.len() {
            let mut earlier: Vec<Vertex> = adjacency[x].iter().copied().filter(|&u| u < x).collect();
            earlier.sort_unstable();
            let id = *index.get(&earlier).ok_or_else(|| {
                Error::InvalidClique(format!("vertex {x} is not attached to a registered clique"))
            })?;
            let before = g.cliques.len();
            g.attach(id)?;
            for c in before..g.cliques.len() {
                index.insert(g.cliques[c].members.clone(), c);
            }
        }
        for (u, list) in adjacency.iter().enumerate() {
            let mut sorted = list.clone();
            sorted.sort_unstable();
            if sorted != g.adjacency[u] {
                return Err(Error::InvalidParameter(format!(
                    "adjacency of vertex {u} is not produced by the growth process"
                )));
            }
        }
        Ok(g)
    }
}

impl Topology for EvolvingGraph {
    fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }
}

fn check_steps(k: usize, steps: usize) -> Result<()> {
    if k.checked_add(steps).is_none_or(|n| n > MAX_VERTICES) {
        return Err(Error::TooLarge { limit: MAX_VERTICES });
    }
    Ok(())
}

/// Random k-tree `G(steps)`: each step joins a new vertex to a uniformly
/// chosen k-clique.
pub fn generate_k_tree<R: Rng + ?Sized>(k: usize, steps: usize, rng: &mut R) -> Result<EvolvingGraph> {
    generate(Family::KTree, k, steps, rng)
}

/// Random k-Apollonian network `A(steps)`: each step joins a new vertex to a
/// uniformly chosen active k-clique and retires that clique.
pub fn generate_k_apollonian<R: Rng + ?Sized>(k: usize, steps: usize, rng: &mut R) -> Result<EvolvingGraph> {
    generate(Family::KApollonian, k, steps, rng)
}

pub fn generate<R: Rng + ?Sized>(family: Family, k: usize, steps: usize, rng: &mut R) -> Result<EvolvingGraph> {
    let mut g = EvolvingGraph::seed(family, k)?;
    check_steps(k, steps)?;
    g.cliques.reserve(k * steps);
    g.adjacency.reserve(steps);
    for _ in 0..steps {
        let id = g.choose_clique(rng);
        g.attach(id)?;
    }
    Ok(g)
}

pub fn degree_histogram<G: Topology + ?Sized>(g: &G) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for v in 0..g.vertex_count() {
        *hist.entry(g.degree(v)).or_insert(0) += 1;
    }
    hist
}

/// Checks that eliminating vertices in `order` never leaves a non-clique
/// neighbourhood: for each vertex, its neighbours later in the order are
/// pairwise adjacent.
pub fn is_perfect_elimination_ordering<G: Topology + ?Sized>(g: &G, order: &[Vertex]) -> bool {
    let n = g.vertex_count();
    if order.len() != n {
        return false;
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = i;
    }
    for &v in order {
        let later: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| pos[w] > pos[v]).collect();
        let Some(&parent) = later.iter().min_by_key(|&&w| pos[w]) else {
            continue;
        };
        if later.iter().any(|&w| w != parent && !g.has_edge(parent, w)) {
            return false;
        }
    }
    true
}

/// Reverse birth order `n-1, ..., 0`.
pub fn reverse_birth_order(g: &EvolvingGraph) -> Vec<Vertex> {
    (0..g.vertex_count()).rev().collect()
}
