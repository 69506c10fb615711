//! Synchronous Push-Pull rumor spreading.
//!
//! In every round each vertex contacts one uniformly random neighbour. An
//! informed vertex pushes the rumor to its contact; an uninformed vertex
//! pulls it if the contact is informed. All contacts of round `r` are judged
//! against the informed set at the end of round `r - 1`, so a vertex
//! informed in round `r` only starts spreading in round `r + 1`.
//!
//! Contacts are drawn in vertex-id order from a single stream. A vertex whose
//! contact cannot change anything (all its neighbours share its state) makes
//! no draw; this leaves the distribution of the trace unchanged.

use std::io::Write;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{is_connected, Topology, Vertex};

/// Which direction of a contact transmits the rumor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    PushPull,
    PushOnly,
    PullOnly,
}

impl Mode {
    fn pushes(self) -> bool {
        matches!(self, Mode::PushPull | Mode::PushOnly)
    }

    fn pulls(self) -> bool {
        matches!(self, Mode::PushPull | Mode::PullOnly)
    }
}

/// Outcome of one protocol run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadTrace {
    pub start_vertex: Vertex,
    /// Round in which each vertex learned the rumor; `None` if it never did.
    pub informed_at: Vec<Option<usize>>,
    /// `counts[r]` is the number of informed vertices after round `r`.
    pub counts: Vec<usize>,
    pub rounds_executed: usize,
    pub completed: bool,
}

impl SpreadTrace {
    pub fn vertex_count(&self) -> usize {
        self.informed_at.len()
    }

    pub fn informed(&self) -> usize {
        *self.counts.last().unwrap_or(&0)
    }

    /// Writes `round,informed_count` rows.
    pub fn write_counts_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["round", "informed_count"])?;
        for (round, count) in self.counts.iter().enumerate() {
            w.write_record([round.to_string(), count.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes `vertex,informed_at` rows; never-informed vertices get an
    /// empty field.
    pub fn write_vertices_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["vertex", "informed_at"])?;
        for (v, at) in self.informed_at.iter().enumerate() {
            w.write_record([v.to_string(), at.map(|r| r.to_string()).unwrap_or_default()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `ceil(10 · n · ln n)`, at least 1.
pub fn default_max_rounds(n: usize) -> usize {
    let n = n as f64;
    ((10.0 * n * n.ln()).ceil() as usize).max(1)
}

/// Runs Push-Pull from `start` until every vertex is informed or
/// `max_rounds` rounds have passed.
pub fn run_push_pull<G, R>(g: &G, start: Vertex, max_rounds: usize, rng: &mut R) -> Result<SpreadTrace>
where
    G: Topology + ?Sized,
    R: Rng + ?Sized,
{
    run_protocol(g, start, max_rounds, Mode::PushPull, rng)
}

pub fn run_protocol<G, R>(g: &G, start: Vertex, max_rounds: usize, mode: Mode, rng: &mut R) -> Result<SpreadTrace>
where
    G: Topology + ?Sized,
    R: Rng + ?Sized,
{
    g.check_vertex(start)?;
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    Ok(simulate(g, start, max_rounds, mode, None, rng))
}

fn simulate<G, R>(g: &G, start: Vertex, max_rounds: usize, mode: Mode, watch: Option<Vertex>, rng: &mut R) -> SpreadTrace
where
    G: Topology + ?Sized,
    R: Rng + ?Sized,
{
    let n = g.vertex_count();
    let mut informed_at = vec![None; n];
    let mut informed = vec![false; n];
    // Neighbours of v not yet informed.
    let mut uninformed_nbrs: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut pending = vec![false; n];
    let mut fresh: Vec<Vertex> = Vec::new();

    let mut mark = |v: Vertex, round: usize, informed: &mut [bool], uninformed_nbrs: &mut [usize]| {
        informed[v] = true;
        informed_at[v] = Some(round);
        for &w in g.neighbors(v) {
            uninformed_nbrs[w] -= 1;
        }
    };
    mark(start, 0, &mut informed, &mut uninformed_nbrs);
    let mut count = 1;
    let mut counts = vec![1];
    let mut round = 0;
    let done = |count: usize, informed: &[bool]| match watch {
        Some(t) => informed[t],
        None => count == n,
    };

    while !done(count, &informed) && round < max_rounds {
        round += 1;
        for v in 0..n {
            let deg = g.degree(v);
            let relevant = if informed[v] {
                mode.pushes() && uninformed_nbrs[v] > 0
            } else {
                mode.pulls() && uninformed_nbrs[v] < deg
            };
            if !relevant {
                continue;
            }
            let contact = g.neighbors(v)[rng.random_range(0..deg)];
            if informed[v] {
                if !informed[contact] && !pending[contact] {
                    pending[contact] = true;
                    fresh.push(contact);
                }
            } else if informed[contact] && !pending[v] {
                pending[v] = true;
                fresh.push(v);
            }
        }
        for v in fresh.drain(..) {
            pending[v] = false;
            mark(v, round, &mut informed, &mut uninformed_nbrs);
            count += 1;
        }
        counts.push(count);
    }

    let completed = count == n;
    SpreadTrace { start_vertex: start, informed_at, counts, rounds_executed: round, completed }
}

/// Smallest round after which at least `ceil(fraction · n)` vertices are
/// informed, or `None` if the trace never got there.
pub fn rounds_to_fraction(trace: &SpreadTrace, fraction: f64) -> Result<Option<usize>> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidFraction(fraction));
    }
    let target = target_count(trace.vertex_count(), fraction);
    Ok(trace.counts.iter().position(|&c| c >= target))
}

pub(crate) fn target_count(n: usize, fraction: f64) -> usize {
    (((fraction * n as f64) - 1e-9).ceil() as usize).clamp(1, n.max(1))
}

/// Rounds until the last vertex of `path` is informed when only its first
/// vertex starts with the rumor. The whole graph runs the protocol; the path
/// is only observed.
pub fn path_relay_time<G, R>(g: &G, path: &[Vertex], rng: &mut R) -> Result<usize>
where
    G: Topology + ?Sized,
    R: Rng + ?Sized,
{
    let (&first, &last) = match (path.first(), path.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::InvalidPath("empty path".into())),
    };
    for &v in path {
        g.check_vertex(v)?;
    }
    for pair in path.windows(2) {
        if !g.has_edge(pair[0], pair[1]) {
            return Err(Error::InvalidPath(format!("{} and {} are not adjacent", pair[0], pair[1])));
        }
    }
    let mut seen = path.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != path.len() {
        return Err(Error::InvalidPath("vertex repeated".into()));
    }
    let trace = simulate(g, first, usize::MAX, Mode::PushPull, Some(last), rng);
    trace.informed_at[last].ok_or_else(|| Error::Internal("path end never informed".into()))
}
