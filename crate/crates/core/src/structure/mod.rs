//! Structural metrics of a finished graph.

mod expansion;

pub use expansion::{exact_expansion, heuristic_expansion, CutProfile, ExpansionReport, EXACT_EXPANSION_LIMIT};

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{is_connected, EvolvingGraph, Topology, Vertex};

/// Graphs up to this size get an exact all-sources diameter.
pub const EXACT_DIAMETER_LIMIT: usize = 10_000;

/// Number of edges with both endpoints in `N(u)`.
pub fn neighborhood_edges<G: Topology + ?Sized>(g: &G, u: Vertex) -> usize {
    let nu = g.neighbors(u);
    let twice: usize = nu.iter().map(|&x| sorted_intersection_len(nu, g.neighbors(x))).sum();
    twice / 2
}

fn sorted_intersection_len(a: &[Vertex], b: &[Vertex]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

pub(crate) fn has_common_neighbor_with<G, F>(g: &G, u: Vertex, v: Vertex, mut pred: F) -> bool
where
    G: Topology + ?Sized,
    F: FnMut(Vertex) -> bool,
{
    let (a, b) = (g.neighbors(u), g.neighbors(v));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if pred(a[i]) {
                    return true;
                }
                i += 1;
                j += 1;
            }
        }
    }
    false
}

fn check_min_degree<G: Topology + ?Sized>(g: &G) -> Result<()> {
    match (0..g.vertex_count()).find(|&v| g.degree(v) < 2) {
        Some(v) => Err(Error::DegreeTooSmall(v)),
        None => Ok(()),
    }
}

/// Exact clustering coefficient: the mean over vertices of
/// `|⟨N(u)⟩| / C(deg(u), 2)`.
pub fn clustering_coefficient<G: Topology + ?Sized>(g: &G) -> Result<BigRational> {
    check_min_degree(g)?;
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidParameter("empty graph".into()));
    }
    // Group by (edges, pairs) so equal terms are added once.
    let mut terms: std::collections::BTreeMap<(usize, usize), usize> = Default::default();
    for u in 0..n {
        let d = g.degree(u);
        *terms.entry((neighborhood_edges(g, u), d * (d - 1) / 2)).or_insert(0) += 1;
    }
    let mut sum = BigRational::zero();
    for ((edges, pairs), mult) in terms {
        sum += BigRational::new(BigInt::from(edges * mult), BigInt::from(pairs));
    }
    Ok(sum / BigRational::from(BigInt::from(n)))
}

/// Floating-point clustering coefficient for large graphs.
pub fn clustering_coefficient_f64<G: Topology + Sync + ?Sized>(g: &G) -> Result<f64> {
    check_min_degree(g)?;
    let n = g.vertex_count();
    let sum: f64 = (0..n)
        .into_par_iter()
        .map(|u| {
            let d = g.degree(u) as f64;
            neighborhood_edges(g, u) as f64 / (d * (d - 1.0) / 2.0)
        })
        .sum();
    Ok(sum / n as f64)
}

/// BFS distances from `source`; `usize::MAX` marks unreachable vertices.
pub fn bfs_distances<G: Topology + ?Sized>(g: &G, source: Vertex) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    let mut queue = VecDeque::from([source]);
    dist[source] = 0;
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn eccentricity<G: Topology + ?Sized>(g: &G, v: Vertex) -> usize {
    bfs_distances(g, v).into_iter().max().unwrap_or(0)
}

/// Exact diameter from all sources.
pub fn diameter<G: Topology + Sync + ?Sized>(g: &G) -> Result<usize> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    Ok((0..g.vertex_count()).into_par_iter().map(|v| eccentricity(g, v)).max().unwrap_or(0))
}

/// Largest eccentricity over `sources` random vertices: a lower bound on
/// the diameter.
pub fn eccentricity_sample<G, R>(g: &G, sources: usize, rng: &mut R) -> Result<usize>
where
    G: Topology + Sync + ?Sized,
    R: Rng + ?Sized,
{
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let n = g.vertex_count();
    let picks = sample(rng, n, sources.min(n)).into_vec();
    Ok(picks.into_par_iter().map(|v| eccentricity(g, v)).max().unwrap_or(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiameterEstimate {
    pub value: usize,
    /// False when `value` is a sampled lower bound.
    pub exact: bool,
}

/// Exact diameter up to [`EXACT_DIAMETER_LIMIT`] vertices, otherwise the
/// sampled lower bound over `sources` BFS runs.
pub fn diameter_estimate<G, R>(g: &G, sources: usize, rng: &mut R) -> Result<DiameterEstimate>
where
    G: Topology + Sync + ?Sized,
    R: Rng + ?Sized,
{
    if g.vertex_count() <= EXACT_DIAMETER_LIMIT {
        Ok(DiameterEstimate { value: diameter(g)?, exact: true })
    } else {
        Ok(DiameterEstimate { value: eccentricity_sample(g, sources, rng)?, exact: false })
    }
}

/// Draft labels: seeds and the seed clique have draft 0, a newborn vertex
/// gets its birth clique's draft plus one, and a clique's draft is the
/// largest draft among its members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DraftLabels {
    pub vertex: Vec<usize>,
    pub clique: Vec<usize>,
}

impl DraftLabels {
    pub fn max_vertex_draft(&self) -> usize {
        self.vertex.iter().copied().max().unwrap_or(0)
    }
}

pub fn draft_labels(g: &EvolvingGraph) -> DraftLabels {
    let mut vertex = vec![0; g.vertex_count()];
    let mut clique = vec![0; g.cliques().len()];
    for x in g.k()..g.vertex_count() {
        let born_into = g.birth_clique(x).expect("non-seed vertices have a birth clique");
        vertex[x] = clique[born_into] + 1;
        let first_child = 1 + g.k() * (g.round_of_birth(x) - 1);
        for c in first_child..first_child + g.k() {
            clique[c] = g.clique(c).members.iter().map(|&u| vertex[u]).max().unwrap_or(0);
        }
    }
    DraftLabels { vertex, clique }
}

pub fn max_degree<G: Topology + ?Sized>(g: &G) -> usize {
    (0..g.vertex_count()).map(|v| g.degree(v)).max().unwrap_or(0)
}

/// `k + 2·ln(n)·n^(1 - 1/k)`: the high-probability ceiling on the maximum
/// degree of a random k-tree after `n` steps.
pub fn max_degree_envelope(k: usize, n: usize) -> f64 {
    let (k, n) = (k as f64, n as f64);
    k + 2.0 * n.ln() * n.powf(1.0 - 1.0 / k)
}

/// Power-law tail fit of a degree sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailFit {
    pub exponent: f64,
    pub d_min: usize,
    pub tail_size: usize,
}

/// Maximum-likelihood tail exponent of a discrete power law,
/// `1 + n / Σ ln(d / (d_min - 1/2))`, over degrees `>= d_min`.
pub fn fit_tail_exponent(degrees: &[usize], d_min: usize) -> Option<TailFit> {
    let tail: Vec<f64> = degrees.iter().filter(|&&d| d >= d_min).map(|&d| d as f64).collect();
    if tail.len() < 2 || d_min == 0 {
        return None;
    }
    let base = d_min as f64 - 0.5;
    let s: f64 = tail.iter().map(|d| (d / base).ln()).sum();
    (s > 0.0).then(|| TailFit { exponent: 1.0 + tail.len() as f64 / s, d_min, tail_size: tail.len() })
}

/// Largest degree observed at least `min_count` times, the default tail
/// cut-off for [`fit_tail_exponent`].
pub fn default_tail_cutoff(degrees: &[usize], min_count: usize) -> Option<usize> {
    let hist = degree_counts(degrees);
    hist.iter().enumerate().rev().find(|&(_, &c)| c >= min_count).map(|(d, _)| d)
}

/// Tail fit with the cut-off from [`default_tail_cutoff`] at 100 observations.
pub fn fit_tail_exponent_auto(degrees: &[usize]) -> Option<TailFit> {
    fit_tail_exponent(degrees, default_tail_cutoff(degrees, 100)?)
}

fn degree_counts(degrees: &[usize]) -> Vec<usize> {
    let mut hist = vec![0; degrees.iter().copied().max().map_or(0, |d| d + 1)];
    for &d in degrees {
        hist[d] += 1;
    }
    hist
}
