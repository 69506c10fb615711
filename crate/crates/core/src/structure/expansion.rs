//! Vertex expansion α(G) and conductance Φ(G).
//!
//! `α(G) = min |∂S| / |S|` over `0 < |S| <= |V|/2`, where `∂S` is the set of
//! outside vertices with a neighbour in `S`.
//! `Φ(G) = min e(S, V∖S) / vol(S)` over `0 < vol(S) <= vol(V)/2`.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{EvolvingGraph, Topology, Vertex};

/// Largest graph [`exact_expansion`] will enumerate.
pub const EXACT_EXPANSION_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionReport {
    pub vertex_expansion: Ratio<u64>,
    pub conductance: Ratio<u64>,
    pub witness_set_alpha: Vec<Vertex>,
    pub witness_set_phi: Vec<Vertex>,
    /// False when the values are upper bounds certified by the witnesses.
    pub exact: bool,
}

/// Cut statistics of one vertex set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CutProfile {
    pub size: u64,
    pub boundary: u64,
    pub cut_edges: u64,
    pub volume: u64,
}

impl CutProfile {
    pub fn of<G: Topology + ?Sized>(g: &G, set: &[Vertex]) -> Self {
        let mut inside = vec![false; g.vertex_count()];
        for &v in set {
            inside[v] = true;
        }
        profile_pair(g, set, &inside, 2 * g.edge_count() as u64).0
    }
}

// Profiles of `set` and of its complement from one scan of `set`.
fn profile_pair<G: Topology + ?Sized>(
    g: &G,
    set: &[Vertex],
    inside: &[bool],
    total_volume: u64,
) -> (CutProfile, CutProfile) {
    let n = g.vertex_count() as u64;
    let mut own = CutProfile { size: set.len() as u64, ..Default::default() };
    let mut touched_outside: Vec<Vertex> = Vec::new();
    let mut inner_boundary = 0;
    for &v in set {
        own.volume += g.degree(v) as u64;
        let mut exits = false;
        for &w in g.neighbors(v) {
            if !inside[w] {
                own.cut_edges += 1;
                exits = true;
                touched_outside.push(w);
            }
        }
        if exits {
            inner_boundary += 1;
        }
    }
    touched_outside.sort_unstable();
    touched_outside.dedup();
    own.boundary = touched_outside.len() as u64;
    let complement = CutProfile {
        size: n - own.size,
        boundary: inner_boundary,
        cut_edges: own.cut_edges,
        volume: total_volume - own.volume,
    };
    (own, complement)
}

struct Best {
    value: Option<Ratio<u64>>,
    witness: Vec<Vertex>,
}

impl Best {
    fn new() -> Self {
        Best { value: None, witness: Vec::new() }
    }

    fn offer(&mut self, value: Ratio<u64>, witness: impl FnOnce() -> Vec<Vertex>) {
        if self.value.is_none_or(|b| value < b) {
            self.value = Some(value);
            self.witness = witness();
        }
    }
}

fn check_defined<G: Topology + ?Sized>(g: &G) -> Result<()> {
    if g.vertex_count() < 2 || g.edge_count() == 0 {
        return Err(Error::InvalidParameter("expansion needs at least two vertices and one edge".into()));
    }
    Ok(())
}

/// Exhaustive α(G) and Φ(G) over all vertex subsets, in Gray-code order so
/// each step updates the cut statistics incrementally.
pub fn exact_expansion<G: Topology + ?Sized>(g: &G) -> Result<ExpansionReport> {
    let n = g.vertex_count();
    if n > EXACT_EXPANSION_LIMIT {
        return Err(Error::GraphTooLargeForExact { limit: EXACT_EXPANSION_LIMIT, actual: n });
    }
    check_defined(g)?;
    let total_volume = 2 * g.edge_count() as u64;
    let mut nbr_count = vec![0u64; n];
    let mut in_set = vec![false; n];
    let (mut size, mut volume, mut boundary, mut cut) = (0u64, 0u64, 0u64, 0u64);
    let mut best_alpha: Option<(Ratio<u64>, u32)> = None;
    let mut best_phi: Option<(Ratio<u64>, u32)> = None;

    for i in 1u32..(1u32 << n) {
        let x = i.trailing_zeros() as usize;
        if in_set[x] {
            for &w in g.neighbors(x) {
                nbr_count[w] -= 1;
                if !in_set[w] {
                    cut -= 1;
                    if nbr_count[w] == 0 {
                        boundary -= 1;
                    }
                }
            }
            in_set[x] = false;
            cut += nbr_count[x];
            if nbr_count[x] > 0 {
                boundary += 1;
            }
            size -= 1;
            volume -= g.degree(x) as u64;
        } else {
            if nbr_count[x] > 0 {
                boundary -= 1;
            }
            cut -= nbr_count[x];
            in_set[x] = true;
            for &w in g.neighbors(x) {
                nbr_count[w] += 1;
                if !in_set[w] {
                    cut += 1;
                    if nbr_count[w] == 1 {
                        boundary += 1;
                    }
                }
            }
            size += 1;
            volume += g.degree(x) as u64;
        }
        let mask = i ^ (i >> 1);
        if size > 0 && 2 * size <= n as u64 {
            let r = Ratio::new(boundary, size);
            if best_alpha.is_none_or(|(b, _)| r < b) {
                best_alpha = Some((r, mask));
            }
        }
        if volume > 0 && 2 * volume <= total_volume {
            let r = Ratio::new(cut, volume);
            if best_phi.is_none_or(|(b, _)| r < b) {
                best_phi = Some((r, mask));
            }
        }
    }
    let members = |mask: u32| (0..n).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>();
    let (alpha, alpha_mask) = best_alpha.ok_or_else(|| Error::Internal("no subset within half the vertices".into()))?;
    let (phi, phi_mask) = best_phi.ok_or_else(|| Error::Internal("no subset within half the volume".into()))?;
    Ok(ExpansionReport {
        vertex_expansion: alpha,
        conductance: phi,
        witness_set_alpha: members(alpha_mask),
        witness_set_phi: members(phi_mask),
        exact: true,
    })
}

/// Upper bounds on α(G) and Φ(G) from sets cut off by the birth structure.
///
/// Every vertex `x` heads the set of vertices whose birth ancestry passes
/// through `x`; every clique `C` heads the set grown out of `C`. Both are
/// separated from the rest by at most `k + 1` vertices. The candidates are
/// these sets, their complements, singletons, and a balanced packing of
/// sibling sets found by descending towards the heaviest branch. Each
/// candidate's ratio is computed exactly, so the witnesses certify the
/// reported values.
pub fn heuristic_expansion(g: &EvolvingGraph) -> Result<ExpansionReport> {
    check_defined(g)?;
    let n = g.vertex_count();
    let k = g.k();
    let total_volume = 2 * g.edge_count() as u64;

    // Vertex tree: the parent of x is the creator of x's birth clique.
    let mut children: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut top: Vec<Vertex> = Vec::new();
    for x in k..n {
        let bc = g.birth_clique(x).expect("non-seed");
        match g.clique_creator(bc) {
            Some(p) => children[p].push(x),
            None => top.push(x),
        }
    }
    for list in &mut children {
        list.sort_by_key(|&x| (g.birth_clique(x), x));
    }

    // Euler order: the subtree of x is order[tin[x]..tout[x]].
    let mut order = Vec::with_capacity(n - k);
    let (mut tin, mut tout) = (vec![0usize; n], vec![0usize; n]);
    let mut stack: Vec<(Vertex, usize)> = top.iter().rev().map(|&x| (x, 0)).collect();
    while let Some((x, next)) = stack.pop() {
        if next == 0 {
            tin[x] = order.len();
            order.push(x);
        }
        if next < children[x].len() {
            stack.push((x, next + 1));
            stack.push((children[x][next], 0));
        } else {
            tout[x] = order.len();
        }
    }

    // Range of the set grown out of each clique (empty when nothing was born into it).
    let mut clique_range: Vec<Option<(usize, usize)>> = vec![None; g.cliques().len()];
    for x in k..n {
        let bc = g.birth_clique(x).expect("non-seed");
        let r = clique_range[bc].get_or_insert((tin[x], tout[x]));
        r.0 = r.0.min(tin[x]);
        r.1 = r.1.max(tout[x]);
    }

    let mut inside = vec![false; n];
    let mut best_alpha = Best::new();
    let mut best_phi = Best::new();
    let mut consider = |set: &[Vertex], inside: &mut Vec<bool>| {
        if set.is_empty() || set.len() == n {
            return;
        }
        for &v in set {
            inside[v] = true;
        }
        let (own, comp) = profile_pair(g, set, inside, total_volume);
        for (p, is_complement) in [(own, false), (comp, true)] {
            let members = || {
                if is_complement {
                    (0..n).filter(|&v| !inside[v]).collect()
                } else {
                    let mut s = set.to_vec();
                    s.sort_unstable();
                    s
                }
            };
            if p.size > 0 && 2 * p.size <= n as u64 {
                best_alpha.offer(Ratio::new(p.boundary, p.size), members);
            }
            if p.volume > 0 && 2 * p.volume <= total_volume {
                best_phi.offer(Ratio::new(p.cut_edges, p.volume), members);
            }
        }
        for &v in set {
            inside[v] = false;
        }
    };

    for v in 0..n {
        consider(&[v], &mut inside);
    }
    for x in k..n {
        consider(&order[tin[x]..tout[x]], &mut inside);
    }
    for &(lo, hi) in clique_range.iter().flatten() {
        consider(&order[lo..hi], &mut inside);
    }

    // Descend towards the heaviest branch, then pack siblings up to n/2.
    let half = n / 2;
    let vertex_size = |x: Vertex| tout[x] - tin[x];
    let clique_size = |c: usize| clique_range[c].map_or(0, |(lo, hi)| hi - lo);
    let mut node = Node::Clique(0);
    loop {
        let items: Vec<(usize, Vec<Vertex>)> = match node {
            Node::Clique(c) => (k..n)
                .filter(|&x| g.birth_clique(x) == Some(c))
                .map(|x| (vertex_size(x), order[tin[x]..tout[x]].to_vec()))
                .collect(),
            Node::Vertex(x) => {
                let first = 1 + k * (g.round_of_birth(x) - 1);
                (first..first + k)
                    .filter_map(|c| clique_range[c].map(|(lo, hi)| (clique_size(c), order[lo..hi].to_vec())))
                    .collect()
            }
        };
        if items.is_empty() {
            break;
        }
        let heaviest = items.iter().enumerate().max_by_key(|(_, (s, _))| *s).map(|(i, _)| i).unwrap();
        if items[heaviest].0 > half {
            node = match node {
                Node::Clique(_) => Node::Vertex(items[heaviest].1[0]),
                Node::Vertex(x) => {
                    let first = 1 + k * (g.round_of_birth(x) - 1);
                    let c = (first..first + k)
                        .find(|&c| clique_range[c].is_some_and(|(lo, _)| order[lo] == items[heaviest].1[0]))
                        .expect("item comes from a child clique");
                    Node::Clique(c)
                }
            };
            continue;
        }
        let mut sorted = items;
        sorted.sort_by(|a, b| b.0.cmp(&a.0));
        let mut packed: Vec<Vertex> = Vec::new();
        for (size, members) in &sorted {
            if packed.len() + size <= half {
                packed.extend_from_slice(members);
            }
        }
        consider(&packed, &mut inside);
        break;
    }

    Ok(ExpansionReport {
        vertex_expansion: best_alpha.value.ok_or_else(|| Error::Internal("no α candidate".into()))?,
        conductance: best_phi.value.ok_or_else(|| Error::Internal("no Φ candidate".into()))?,
        witness_set_alpha: best_alpha.witness,
        witness_set_phi: best_phi.witness,
        exact: false,
    })
}

#[derive(Debug, Clone, Copy)]
enum Node {
    Clique(usize),
    Vertex(Vertex),
}
