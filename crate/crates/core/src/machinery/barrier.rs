use std::collections::{HashMap, VecDeque};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{is_connected, EvolvingGraph, Family, Topology, Vertex};

/// Two disjoint k-cliques whose connecting edges form a cut, with every
/// member of degree at least `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarrierWitness {
    pub clique1: Vec<Vertex>,
    pub clique2: Vec<Vertex>,
    pub s: usize,
    pub cut_verified: bool,
}

fn check_clique<G: Topology + ?Sized>(g: &G, c: &[Vertex]) -> Result<()> {
    for &v in c {
        g.check_vertex(v)?;
    }
    for (i, &u) in c.iter().enumerate() {
        for &v in &c[i + 1..] {
            if u == v || !g.has_edge(u, v) {
                return Err(Error::InvalidClique(format!("{c:?} is not a clique")));
            }
        }
    }
    Ok(())
}

/// Checks the barrier conditions for `clique1`, `clique2` by deleting the
/// edges between them and testing connectivity. `Ok(None)` means the edges
/// are not a cut.
pub fn verify_barrier<G: Topology + ?Sized>(
    g: &G,
    clique1: &[Vertex],
    clique2: &[Vertex],
) -> Result<Option<BarrierWitness>> {
    if clique1.is_empty() || clique1.len() != clique2.len() {
        return Err(Error::InvalidClique("barrier cliques must be non-empty and equally sized".into()));
    }
    check_clique(g, clique1)?;
    check_clique(g, clique2)?;
    if clique1.iter().any(|v| clique2.contains(v)) {
        return Err(Error::InvalidClique("barrier cliques must be disjoint".into()));
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    Ok(cut_witness(g, clique1, clique2))
}

/// Grows the two sides in lockstep and stops as soon as one of them runs out
/// of vertices (a cut) or they meet (no cut), so the cost is governed by the
/// smaller side. Assumes a connected graph and valid, disjoint cliques.
fn cut_witness<G: Topology + ?Sized>(g: &G, clique1: &[Vertex], clique2: &[Vertex]) -> Option<BarrierWitness> {
    let mut side: HashMap<Vertex, u8> = HashMap::new();
    let mut queues = [VecDeque::new(), VecDeque::new()];
    for (tag, clique) in [(1u8, clique1), (2u8, clique2)] {
        for &v in clique {
            side.insert(v, tag);
            queues[tag as usize - 1].push_back(v);
        }
    }
    let crossing = |a: Vertex, b: Vertex| {
        (clique1.contains(&a) && clique2.contains(&b)) || (clique2.contains(&a) && clique1.contains(&b))
    };
    let mut budget = [0usize; 2];
    loop {
        let i = if budget[0] <= budget[1] { 0 } else { 1 };
        let Some(u) = queues[i].pop_front() else { break };
        let tag = i as u8 + 1;
        for &w in g.neighbors(u) {
            budget[i] += 1;
            if crossing(u, w) {
                continue;
            }
            match side.get(&w) {
                None => {
                    side.insert(w, tag);
                    queues[i].push_back(w);
                }
                Some(&t) if t != tag => return None,
                Some(_) => {}
            }
        }
    }
    let s = clique1.iter().chain(clique2).map(|&v| g.degree(v)).min().unwrap_or(0);
    let mut c1 = clique1.to_vec();
    let mut c2 = clique2.to_vec();
    c1.sort_unstable();
    c2.sort_unstable();
    Some(BarrierWitness { clique1: c1, clique2: c2, s, cut_verified: true })
}

/// For each clique, the first `k` vertices (in birth order) whose birth
/// ancestry passes through it.
fn first_descendants(g: &EvolvingGraph) -> Vec<Vec<Vertex>> {
    let k = g.k();
    let mut first: Vec<Vec<Vertex>> = vec![Vec::new(); g.cliques().len()];
    for v in k..g.vertex_count() {
        let mut c = g.birth_clique(v).expect("non-seed");
        loop {
            // An ancestor of a full clique is full too: its descendants are a superset.
            if first[c].len() == k {
                break;
            }
            first[c].push(v);
            match g.clique_creator(c) {
                Some(p) => c = g.birth_clique(p).expect("creators are non-seed"),
                None => break,
            }
        }
    }
    first
}

/// Whether `(base, grown)` follows the seeding pattern: the i-th grown
/// vertex joins all earlier grown vertices plus base members only, starting
/// from the base clique itself.
fn follows_pattern(g: &EvolvingGraph, base: usize, grown: &[Vertex]) -> bool {
    let k = g.k();
    if grown.len() != k || g.birth_clique(grown[0]) != Some(base) {
        return false;
    }
    let base_members = &g.clique(base).members;
    grown.iter().enumerate().skip(1).all(|(i, &v)| {
        let members = &g.clique(g.birth_clique(v).expect("non-seed")).members;
        let earlier = &grown[..i];
        earlier.iter().all(|w| members.contains(w))
            && members.iter().all(|w| earlier.contains(w) || base_members.contains(w))
    })
}

/// Pattern candidates that pass the degree filter and the cut check, in
/// clique-id order.
fn barrier_candidates(g: &EvolvingGraph, s_min: usize, first_only: bool) -> Vec<BarrierWitness> {
    let mut found = Vec::new();
    for (c, grown) in first_descendants(g).into_iter().enumerate() {
        if !follows_pattern(g, c, &grown) {
            continue;
        }
        let base = &g.clique(c).members;
        let s = base.iter().chain(&grown).map(|&v| g.degree(v)).min().unwrap_or(0);
        if s < s_min {
            continue;
        }
        // Grown graphs are connected and the pattern guarantees disjoint cliques.
        if let Some(w) = cut_witness(g, base, &grown) {
            found.push(w);
            if first_only {
                break;
            }
        }
    }
    found
}

/// First verified barrier with strength at least `s_min` among the
/// `(clique, first k vertices grown out of it)` pairs that follow the
/// seeding pattern. Sound but not complete: other barriers may exist.
pub fn find_barrier(g: &EvolvingGraph, s_min: usize) -> Option<BarrierWitness> {
    barrier_candidates(g, s_min, true).into_iter().next()
}

/// Every verified pattern barrier with strength at least `s_min`.
pub fn find_all_barriers(g: &EvolvingGraph, s_min: usize) -> Vec<BarrierWitness> {
    barrier_candidates(g, s_min, false)
}

/// Random k-tree conditioned on the seed barrier: the i-th vertex born
/// (`v_i`, id `k + i - 1`) joins `v_1..v_{i-1}` and seeds `u_i..u_k`, and no
/// later vertex joins a clique mixing seeds and `v`s. Later choices are
/// drawn uniformly and redrawn when they hit a mixed clique, which samples
/// the conditioned process exactly.
///
/// The barrier is `(0..k, k..2k)`.
pub fn force_barrier<R: Rng + ?Sized>(k: usize, steps: usize, rng: &mut R) -> Result<EvolvingGraph> {
    if steps < k {
        return Err(Error::InvalidParameter(format!("forcing a barrier needs at least k = {k} steps")));
    }
    let mut g = EvolvingGraph::seed(Family::KTree, k)?;
    for i in 0..k {
        let mut members: Vec<Vertex> = (k..k + i).collect();
        members.extend(i..k);
        let id = g
            .find_clique(&members)
            .ok_or_else(|| Error::Internal(format!("pattern clique {members:?} missing")))?;
        g.attach(id)?;
    }
    let mixed: Vec<bool> = g
        .cliques()
        .iter()
        .map(|c| c.members.iter().any(|&v| v < k) && c.members.iter().any(|&v| v >= k))
        .collect();
    if mixed.iter().all(|&m| m) {
        return Err(Error::Internal("every clique is forbidden".into()));
    }
    for _ in k..steps {
        let id = loop {
            let id = g.choose_clique(rng);
            if !mixed.get(id).copied().unwrap_or(false) {
                break id;
            }
        };
        g.attach(id)?;
    }
    Ok(g)
}
