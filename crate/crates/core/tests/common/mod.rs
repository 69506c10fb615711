//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's algorithms, only its graph accessors.
#![allow(dead_code)]

use std::collections::BTreeMap;

use gossiplab::{EvolvingGraph, Topology, Vertex};
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

/// Exact law of `(white, black)` after `n` draws of the urn with matrix
/// `[[α, β], [γ, δ]]` (rows: black drawn, white drawn), by forward
/// propagation over states.
pub fn urn_law(w0: u64, b0: u64, rule: [[u64; 2]; 2], n: u64) -> BTreeMap<(u64, u64), BigRational> {
    let mut law = BTreeMap::from([((w0, b0), BigRational::one())]);
    for _ in 0..n {
        let mut next: BTreeMap<(u64, u64), BigRational> = BTreeMap::new();
        for ((w, b), p) in law {
            let total = BigInt::from(w + b);
            if w > 0 {
                let pw = &p * BigRational::new(BigInt::from(w), total.clone());
                *next.entry((w + rule[1][1], b + rule[1][0])).or_insert_with(BigRational::zero) += pw;
            }
            if b > 0 {
                let pb = &p * BigRational::new(BigInt::from(b), total.clone());
                *next.entry((w + rule[0][1], b + rule[0][0])).or_insert_with(BigRational::zero) += pb;
            }
        }
        law = next;
    }
    law
}

/// Law of the white count alone.
pub fn white_law(w0: u64, b0: u64, rule: [[u64; 2]; 2], n: u64) -> BTreeMap<u64, BigRational> {
    let mut out = BTreeMap::new();
    for ((w, _), p) in urn_law(w0, b0, rule, n) {
        *out.entry(w).or_insert_with(BigRational::zero) += p;
    }
    out
}

pub fn law_mean_variance(law: &BTreeMap<u64, BigRational>) -> (BigRational, BigRational) {
    let mut mean = BigRational::zero();
    let mut second = BigRational::zero();
    for (&x, p) in law {
        let x = BigRational::from(BigInt::from(x));
        mean += &x * p;
        second += &x * &x * p;
    }
    let var = second - &mean * &mean;
    (mean, var)
}

pub fn to_f64(q: &BigRational) -> f64 {
    let (n, d) = (q.numer().to_string().parse::<f64>().unwrap(), q.denom().to_string().parse::<f64>().unwrap());
    n / d
}

/// α(G) and Φ(G) by looping over every vertex subset with plain adjacency
/// queries.
pub fn brute_force_expansion<G: Topology + ?Sized>(g: &G) -> (Ratio<u64>, Ratio<u64>) {
    let n = g.vertex_count();
    let total_volume: u64 = (0..n).map(|v| g.degree(v) as u64).sum();
    let mut alpha: Option<Ratio<u64>> = None;
    let mut phi: Option<Ratio<u64>> = None;
    for mask in 1u32..(1 << n) - 1 {
        let inside = |v: usize| mask >> v & 1 == 1;
        let size = (0..n).filter(|&v| inside(v)).count() as u64;
        let boundary = (0..n).filter(|&v| !inside(v) && (0..n).any(|u| inside(u) && g.has_edge(u, v))).count() as u64;
        let mut cut = 0u64;
        let mut volume = 0u64;
        for u in (0..n).filter(|&u| inside(u)) {
            volume += g.degree(u) as u64;
            cut += (0..n).filter(|&v| !inside(v) && g.has_edge(u, v)).count() as u64;
        }
        if 2 * size <= n as u64 {
            let r = Ratio::new(boundary, size);
            alpha = Some(alpha.map_or(r, |a| a.min(r)));
        }
        if volume > 0 && 2 * volume <= total_volume {
            let r = Ratio::new(cut, volume);
            phi = Some(phi.map_or(r, |a| a.min(r)));
        }
    }
    (alpha.unwrap(), phi.unwrap())
}

/// Fast-edge test written out as a loop over every third vertex.
pub fn naive_fast(g: &impl Topology, u: Vertex, v: Vertex, tau: usize) -> bool {
    g.degree(u) <= tau
        || g.degree(v) <= tau
        || (0..g.vertex_count()).any(|w| w != u && w != v && g.has_edge(u, w) && g.has_edge(v, w) && g.degree(w) <= tau)
}

/// Later neighbours of each vertex in `order` must be pairwise adjacent.
pub fn naive_peo(g: &impl Topology, order: &[Vertex]) -> bool {
    let mut pos = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order.iter().enumerate().all(|(i, &v)| {
        let later: Vec<Vertex> = (0..g.vertex_count()).filter(|&w| g.has_edge(v, w) && pos[w] > i).collect();
        later.iter().enumerate().all(|(a, &x)| later[a + 1..].iter().all(|&y| g.has_edge(x, y)))
    })
}

/// Number of edges inside `N(u)`, counted pair by pair.
pub fn naive_neighborhood_edges(g: &impl Topology, u: Vertex) -> usize {
    let nu = g.neighbors(u);
    let mut count = 0;
    for (i, &x) in nu.iter().enumerate() {
        for &y in &nu[i + 1..] {
            if g.has_edge(x, y) {
                count += 1;
            }
        }
    }
    count
}

/// Structural checks on a highway forest at cut `m`: parents are born
/// earlier inside the child's birth clique, depths and roots agree with
/// the parent chain, and heights are the per-root maxima.
pub fn forest_well_formed(g: &EvolvingGraph, forest: &gossiplab::machinery::HighwayForest) -> Result<(), String> {
    let k = g.k();
    if forest.vertex_count() != k + forest.m {
        return Err(format!("forest covers {} vertices, expected {}", forest.vertex_count(), k + forest.m));
    }
    for v in 0..forest.vertex_count() {
        match forest.parent[v] {
            None if v < k => {
                if forest.depth[v] != 0 || forest.root[v] != v {
                    return Err(format!("seed {v} has depth {} root {}", forest.depth[v], forest.root[v]));
                }
            }
            None => return Err(format!("non-seed {v} has no parent")),
            Some(p) => {
                let bc = g.birth_clique(v).ok_or("seed with parent")?;
                if p >= v || !g.clique(bc).members.contains(&p) {
                    return Err(format!("parent {p} of {v} is not an earlier birth-clique member"));
                }
                if forest.depth[v] != forest.depth[p] + 1 || forest.root[v] != forest.root[p] {
                    return Err(format!("depth/root of {v} disagree with parent {p}"));
                }
            }
        }
    }
    let mut heights = vec![0; k];
    for v in 0..forest.vertex_count() {
        heights[forest.root[v]] = heights[forest.root[v]].max(forest.depth[v]);
    }
    if heights != forest.heights {
        return Err(format!("heights {:?} != recomputed {:?}", forest.heights, heights));
    }
    Ok(())
}

/// Random simple graph `G(n, p)`.
pub fn random_graph<R: rand::Rng>(n: usize, p: f64, rng: &mut R) -> gossiplab::AdjacencyGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    gossiplab::AdjacencyGraph::from_edges(n, &edges).unwrap()
}

pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
