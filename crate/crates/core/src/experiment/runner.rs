use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{generate, AdjacencyGraph, EvolvingGraph, Family, Topology, Vertex};
use crate::io::write_graph;
use crate::machinery::{
    build_highway_forest, classify_fast_edges, classify_nice, decompose_pieces, find_all_barriers, force_barrier,
    forest_edges, lower_bound_cut, verify_barrier, verify_forest_clique_bound, Schedule,
};
use crate::pushpull::{default_max_rounds, run_push_pull, rounds_to_fraction};
use crate::rng::{stream, trial_seed, Stream};
use crate::structure::{
    clustering_coefficient_f64, diameter_estimate, draft_labels, exact_expansion, fit_tail_exponent_auto,
    heuristic_expansion, max_degree, max_degree_envelope, EXACT_EXPANSION_LIMIT,
};

use super::config::ExperimentConfig;
use super::records::{
    ensure_parent, write_csv, write_jsonl, BarrierRecord, LowerBoundRecord, NiceSummary, PieceSizeRow,
    StructureRecord, TrialRecord, LOWERBOUND_SCHEMA, PIECE_SIZE_SCHEMA, STRUCTURE_SCHEMA, TRIAL_SCHEMA,
};

/// One `(size, trial)` entry of the experiment grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
}

/// Grid cells in size-major order.
pub fn cells(config: &ExperimentConfig) -> Vec<Cell> {
    config
        .sizes
        .iter()
        .flat_map(|&n| {
            (0..config.trials).map(move |trial| Cell {
                n,
                trial,
                seed: trial_seed(config.master_seed, n as u64, trial as u64),
            })
        })
        .collect()
}

/// Runs `f` over every cell on the rayon pool; results keep grid order.
fn map_cells<T, F>(config: &ExperimentConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&ExperimentConfig, Cell) -> Result<T> + Sync,
{
    config.validate()?;
    cells(config).into_par_iter().map(|cell| f(config, cell)).collect()
}

pub fn grow(config: &ExperimentConfig, cell: Cell) -> Result<EvolvingGraph> {
    generate(config.family, config.k, cell.n, &mut stream(cell.seed, Stream::Graph))
}

fn max_rounds(config: &ExperimentConfig, vertices: usize) -> usize {
    config.max_rounds.unwrap_or_else(|| default_max_rounds(vertices))
}

fn uniform_start(seed: u64, vertices: usize) -> Vertex {
    stream(seed, Stream::Start).random_range(0..vertices)
}

fn bad_fraction(g: &EvolvingGraph, schedule: &Schedule) -> Result<f64> {
    let forest = build_highway_forest(g, schedule.m)?;
    let pieces = decompose_pieces(g, schedule.m)?;
    Ok(classify_nice(g, &forest, &pieces, schedule.tau).bad_fraction())
}

/// One row of the spreading study.
pub fn spread_trial(config: &ExperimentConfig, cell: Cell) -> Result<TrialRecord> {
    let g = grow(config, cell)?;
    let adjacency = AdjacencyGraph::of(&g);
    let vertices = g.vertex_count();
    let start = uniform_start(cell.seed, vertices);
    let cap = max_rounds(config, vertices);
    let trace = run_push_pull(&adjacency, start, cap, &mut stream(cell.seed, Stream::Protocol))?;
    let rounds_to_fraction = rounds_to_fraction(&trace, config.fraction)?;
    let rounds_to_all = trace.completed.then_some(trace.rounds_executed);

    let mut metrics = stream(cell.seed, Stream::Metrics);
    let diameter = diameter_estimate(&adjacency, config.diameter_sources, &mut metrics)?;
    let schedule = Schedule::upper_bound(config.family, config.k, cell.n, &config.schedule);
    Ok(TrialRecord {
        schema: TRIAL_SCHEMA.into(),
        seed: cell.seed,
        n: cell.n,
        vertices,
        k: config.k,
        family: config.family,
        trial: cell.trial,
        start_vertex: start,
        fraction: config.fraction,
        rounds_to_fraction,
        rounds_to_all,
        censored: !trace.completed,
        max_rounds: cap,
        diameter_lb: diameter.value,
        max_degree: max_degree(&adjacency),
        cc: clustering_coefficient_f64(&adjacency)?,
        barrier_s: None,
        bad_fraction: Some(bad_fraction(&g, &schedule)?),
    })
}

pub fn spread_records(config: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    map_cells(config, spread_trial)
}

/// Writes `spread.csv` under the output directory.
pub fn cmd_spread(config: &ExperimentConfig) -> Result<PathBuf> {
    let rows = spread_records(config)?;
    let path = config.out_dir.join("spread.csv");
    write_csv(&path, &rows)?;
    Ok(path)
}

/// Writes one graph file per cell under `graphs/`.
pub fn cmd_generate(config: &ExperimentConfig) -> Result<Vec<PathBuf>> {
    let dir = config.out_dir.join("graphs");
    fs::create_dir_all(&dir)?;
    map_cells(config, |config, cell| {
        let g = grow(config, cell)?;
        let path = dir.join(format!("{}_k{}_n{}_t{}.txt", config.family, config.k, cell.n, cell.trial));
        let mut out = BufWriter::new(File::create(&path)?);
        write_graph(&g, cell.seed, config.with_cliques, &mut out)?;
        std::io::Write::flush(&mut out)?;
        Ok(path)
    })
}

/// Everything the lower-bound study measures for one cell.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundOutcome {
    pub record: LowerBoundRecord,
    pub piece_sizes: Vec<PieceSizeRow>,
    pub barriers: Vec<BarrierRecord>,
}

/// Pieces at the lower-bound cut, pattern barriers in the random graph, and
/// one Push-Pull run on a graph grown with a barrier forced at the seed.
pub fn lowerbound_trial(config: &ExperimentConfig, cell: Cell) -> Result<LowerBoundOutcome> {
    if config.family != Family::KTree {
        return Err(Error::Config("the lower-bound study is defined for k-trees only".into()));
    }
    let k = config.k;
    let g = grow(config, cell)?;
    let f = config.schedule.f.unwrap_or_else(|| crate::machinery::default_slow_function(cell.n));
    let m = config.schedule.m.unwrap_or_else(|| lower_bound_cut(k, cell.n, f)).clamp(1, cell.n);
    let pieces = decompose_pieces(&g, m)?;
    let mut sizes: Vec<usize> = (0..pieces.piece_count()).map(|j| pieces.vertex_count(j, k)).collect();
    sizes.sort_unstable();
    let (lo, hi) = (cell.n as f64 / (m as f64 * f), cell.n as f64 * f / m as f64);
    let moderate_count = sizes.iter().filter(|&&s| (lo..=hi).contains(&(s as f64))).count();

    let mut piece_sizes: Vec<PieceSizeRow> = Vec::new();
    for &s in &sizes {
        match piece_sizes.last_mut() {
            Some(row) if row.piece_size == s => row.count += 1,
            _ => piece_sizes.push(PieceSizeRow {
                schema: PIECE_SIZE_SCHEMA.into(),
                seed: cell.seed,
                n: cell.n,
                trial: cell.trial,
                piece_size: s,
                count: 1,
            }),
        }
    }

    let s_min = config.barrier_s_min();
    let found = find_all_barriers(&g, s_min);
    let best_barrier_s = found.iter().map(|w| w.s).max();
    let mut barriers: Vec<BarrierRecord> = found
        .into_iter()
        .map(|witness| BarrierRecord { seed: cell.seed, k, n: cell.n, m, forced: false, witness })
        .collect();

    let forced = force_barrier(k, cell.n.max(k), &mut stream(cell.seed, Stream::Forced))?;
    let c1: Vec<Vertex> = (0..k).collect();
    let c2: Vec<Vertex> = (k..2 * k).collect();
    let witness = verify_barrier(&forced, &c1, &c2)?
        .ok_or_else(|| Error::Internal("forced barrier failed verification".into()))?;
    let adjacency = AdjacencyGraph::of(&forced);
    let start = uniform_start(cell.seed, forced.vertex_count());
    let cap = max_rounds(config, forced.vertex_count());
    let trace = run_push_pull(&adjacency, start, cap, &mut stream(cell.seed, Stream::Protocol))?;
    let forced_s = witness.s;
    barriers.push(BarrierRecord { seed: cell.seed, k, n: forced.steps(), m, forced: true, witness });

    let record = LowerBoundRecord {
        schema: LOWERBOUND_SCHEMA.into(),
        seed: cell.seed,
        n: cell.n,
        k,
        trial: cell.trial,
        m,
        f,
        piece_count: sizes.len(),
        moderate_count,
        min_piece: sizes.first().copied().unwrap_or(0),
        median_piece: sizes.get(sizes.len() / 2).copied().unwrap_or(0),
        max_piece: sizes.last().copied().unwrap_or(0),
        s_min,
        barriers_found: barriers.len() - 1,
        best_barrier_s,
        forced_s,
        forced_start: start,
        forced_rounds_to_all: trace.completed.then_some(trace.rounds_executed),
        forced_censored: !trace.completed,
    };
    Ok(LowerBoundOutcome { record, piece_sizes, barriers })
}

pub fn lowerbound_outcomes(config: &ExperimentConfig) -> Result<Vec<LowerBoundOutcome>> {
    map_cells(config, lowerbound_trial)
}

/// Files written by [`cmd_lowerbound`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundPaths {
    pub records: PathBuf,
    pub piece_sizes: PathBuf,
    pub barriers: PathBuf,
}

/// Writes `lowerbound.csv`, `piece_sizes.csv` and `barriers.jsonl`.
pub fn cmd_lowerbound(config: &ExperimentConfig) -> Result<LowerBoundPaths> {
    let outcomes = lowerbound_outcomes(config)?;
    let paths = LowerBoundPaths {
        records: config.out_dir.join("lowerbound.csv"),
        piece_sizes: config.out_dir.join("piece_sizes.csv"),
        barriers: config.out_dir.join("barriers.jsonl"),
    };
    let records: Vec<_> = outcomes.iter().map(|o| o.record.clone()).collect();
    let sizes: Vec<_> = outcomes.iter().flat_map(|o| o.piece_sizes.iter().cloned()).collect();
    let barriers: Vec<_> = outcomes.iter().flat_map(|o| o.barriers.iter().cloned()).collect();
    write_csv(&paths.records, &records)?;
    write_csv(&paths.piece_sizes, &sizes)?;
    write_jsonl(&paths.barriers, &barriers)?;
    Ok(paths)
}

/// Structural survey of one cell plus its nice/bad summary.
pub fn structure_trial(config: &ExperimentConfig, cell: Cell) -> Result<(StructureRecord, NiceSummary)> {
    let k = config.k;
    let g = grow(config, cell)?;
    let adjacency = AdjacencyGraph::of(&g);
    let vertices = g.vertex_count();
    let mut metrics = stream(cell.seed, Stream::Metrics);
    let diameter = diameter_estimate(&adjacency, config.diameter_sources, &mut metrics)?;
    let degrees: Vec<usize> = (0..vertices).map(|v| adjacency.degree(v)).collect();
    let tail = fit_tail_exponent_auto(&degrees);
    let expansion =
        if vertices <= EXACT_EXPANSION_LIMIT { exact_expansion(&adjacency)? } else { heuristic_expansion(&g)? };
    let ratio = |r: num_rational::Ratio<u64>| *r.numer() as f64 / *r.denom() as f64;

    let schedule = Schedule::upper_bound(config.family, k, cell.n, &config.schedule);
    let forest = build_highway_forest(&g, schedule.m)?;
    let violations = verify_forest_clique_bound(&g, &forest).len();
    let edges = adjacency.edges();
    let fast = classify_fast_edges(&adjacency, &edges, schedule.tau)?;
    let tree_edges = forest_edges(&forest);
    let tree_fast = classify_fast_edges(&adjacency, &tree_edges, schedule.tau)?;
    let rate = |flags: &[bool]| {
        if flags.is_empty() {
            1.0
        } else {
            flags.iter().filter(|&&b| b).count() as f64 / flags.len() as f64
        }
    };
    let pieces = decompose_pieces(&g, schedule.m)?;
    let nice = classify_nice(&g, &forest, &pieces, schedule.tau);

    let record = StructureRecord {
        schema: STRUCTURE_SCHEMA.into(),
        seed: cell.seed,
        n: cell.n,
        vertices,
        k,
        family: config.family,
        trial: cell.trial,
        cc: clustering_coefficient_f64(&adjacency)?,
        diameter: diameter.value,
        diameter_exact: diameter.exact,
        max_draft: draft_labels(&g).max_vertex_draft(),
        max_degree: max_degree(&adjacency),
        degree_envelope: max_degree_envelope(k, cell.n),
        tail_exponent: tail.map(|t| t.exponent),
        tail_d_min: tail.map(|t| t.d_min),
        alpha_ub: ratio(expansion.vertex_expansion),
        phi_ub: ratio(expansion.conductance),
        expansion_exact: expansion.exact,
        m: schedule.m,
        q: schedule.q,
        tau: schedule.tau,
        forest_height: forest.max_height(),
        forest_violations: violations,
        fast_edge_rate: rate(&fast),
        forest_fast_rate: rate(&tree_fast),
        bad_fraction: nice.bad_fraction(),
    };
    let summary = NiceSummary {
        seed: cell.seed,
        k,
        n: cell.n,
        m: schedule.m,
        tau: schedule.tau,
        bad_count: nice.bad_count,
        bad_fraction: nice.bad_fraction(),
        piece_count: pieces.piece_count(),
        nice_pieces: nice.piece_nice.iter().filter(|&&b| b).count(),
        sigma_size: nice.sigma.len(),
    };
    Ok((record, summary))
}

pub fn structure_records(config: &ExperimentConfig) -> Result<Vec<(StructureRecord, NiceSummary)>> {
    map_cells(config, structure_trial)
}

/// Files written by [`cmd_structure`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructurePaths {
    pub records: PathBuf,
    pub nice: PathBuf,
}

/// Writes `structure.csv` and `nice.jsonl`.
pub fn cmd_structure(config: &ExperimentConfig) -> Result<StructurePaths> {
    let rows = structure_records(config)?;
    let paths = StructurePaths {
        records: config.out_dir.join("structure.csv"),
        nice: config.out_dir.join("nice.jsonl"),
    };
    let (records, nice): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    write_csv(&paths.records, &records)?;
    ensure_parent(&paths.nice)?;
    write_jsonl(&paths.nice, &nice)?;
    Ok(paths)
}
