use std::fs::{self, File};
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Family, Vertex};
use crate::machinery::BarrierWitness;

/// Value of the `schema` column in spread CSVs.
pub const TRIAL_SCHEMA: &str = "gossiplab.trial.v1";
pub const LOWERBOUND_SCHEMA: &str = "gossiplab.lowerbound.v1";
pub const PIECE_SIZE_SCHEMA: &str = "gossiplab.piece_sizes.v1";
pub const STRUCTURE_SCHEMA: &str = "gossiplab.structure.v1";

/// One protocol run on one generated graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub schema: String,
    pub seed: u64,
    /// Growth steps.
    pub n: usize,
    pub vertices: usize,
    pub k: usize,
    pub family: Family,
    pub trial: usize,
    pub start_vertex: Vertex,
    pub fraction: f64,
    /// Rounds until `fraction` of the vertices were informed.
    pub rounds_to_fraction: Option<usize>,
    pub rounds_to_all: Option<usize>,
    /// True when the run hit `max_rounds` before informing everyone.
    pub censored: bool,
    pub max_rounds: usize,
    pub diameter_lb: usize,
    pub max_degree: usize,
    pub cc: f64,
    pub barrier_s: Option<usize>,
    pub bad_fraction: Option<f64>,
}

impl TrialRecord {
    /// `rounds_to_all` with censored runs mapped to infinity.
    pub fn rounds_to_all_or_inf(&self) -> f64 {
        self.rounds_to_all.map_or(f64::INFINITY, |r| r as f64)
    }

    pub fn rounds_to_fraction_or_inf(&self) -> f64 {
        self.rounds_to_fraction.map_or(f64::INFINITY, |r| r as f64)
    }
}

/// Piece statistics, barrier search and one forced-barrier run for one trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundRecord {
    pub schema: String,
    pub seed: u64,
    pub n: usize,
    pub k: usize,
    pub trial: usize,
    pub m: usize,
    pub f: f64,
    pub piece_count: usize,
    pub moderate_count: usize,
    pub min_piece: usize,
    pub median_piece: usize,
    pub max_piece: usize,
    pub s_min: usize,
    pub barriers_found: usize,
    pub best_barrier_s: Option<usize>,
    pub forced_s: usize,
    pub forced_start: Vertex,
    pub forced_rounds_to_all: Option<usize>,
    pub forced_censored: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PieceSizeRow {
    pub schema: String,
    pub seed: u64,
    pub n: usize,
    pub trial: usize,
    /// Vertices in the piece, base clique included.
    pub piece_size: usize,
    pub count: usize,
}

/// Barrier witness tagged with the run it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarrierRecord {
    pub seed: u64,
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub forced: bool,
    pub witness: BarrierWitness,
}

/// Structural survey of one generated graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureRecord {
    pub schema: String,
    pub seed: u64,
    pub n: usize,
    pub vertices: usize,
    pub k: usize,
    pub family: Family,
    pub trial: usize,
    pub cc: f64,
    pub diameter: usize,
    pub diameter_exact: bool,
    pub max_draft: usize,
    pub max_degree: usize,
    pub degree_envelope: f64,
    pub tail_exponent: Option<f64>,
    pub tail_d_min: Option<usize>,
    pub alpha_ub: f64,
    pub phi_ub: f64,
    pub expansion_exact: bool,
    pub m: usize,
    pub q: usize,
    pub tau: usize,
    pub forest_height: usize,
    pub forest_violations: usize,
    pub fast_edge_rate: f64,
    pub forest_fast_rate: f64,
    pub bad_fraction: f64,
}

/// Nice/bad summary keyed by `(seed, k, n, m, tau)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NiceSummary {
    pub seed: u64,
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub tau: usize,
    pub bad_count: usize,
    pub bad_fraction: f64,
    pub piece_count: usize,
    pub nice_pieces: usize,
    pub sigma_size: usize,
}

pub(crate) fn ensure_parent(path: &Path) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    Ok(())
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    ensure_parent(path)?;
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_jsonl<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    ensure_parent(path)?;
    let mut out = BufWriter::new(File::create(path)?);
    for row in rows {
        serde_json::to_writer(&mut out, row)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Reads a CSV whose rows carry a `schema` column equal to `schema`.
pub fn read_versioned_csv<T, R>(input: R, schema: &str) -> Result<Vec<T>>
where
    T: DeserializeOwned,
    R: Read,
{
    let mut reader = csv::Reader::from_reader(input);
    let headers = reader.headers()?.clone();
    if headers.get(0) != Some("schema") {
        return Err(Error::Schema {
            expected: schema.to_string(),
            found: format!("no schema column (header starts with {:?})", headers.get(0).unwrap_or("")),
        });
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let found = record.get(0).unwrap_or("");
        if found != schema {
            return Err(Error::Schema { expected: schema.to_string(), found: found.to_string() });
        }
        rows.push(record.deserialize(Some(&headers))?);
    }
    Ok(rows)
}

pub fn read_trial_records(path: &Path) -> Result<Vec<TrialRecord>> {
    read_versioned_csv(File::open(path)?, TRIAL_SCHEMA)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sample(n: usize, all: Option<usize>) -> TrialRecord {
        TrialRecord {
            schema: TRIAL_SCHEMA.into(),
            seed: 9,
            n,
            vertices: n + 2,
            k: 2,
            family: Family::KTree,
            trial: 0,
            start_vertex: 1,
            fraction: 0.99,
            rounds_to_fraction: Some(4),
            rounds_to_all: all,
            censored: all.is_none(),
            max_rounds: 100,
            diameter_lb: 3,
            max_degree: 7,
            cc: 0.75,
            barrier_s: None,
            bad_fraction: Some(0.25),
        }
    }

    #[test]
    fn trial_csv_round_trip_keeps_empty_fields() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nested/spread.csv");
        let rows = vec![sample(10, Some(6)), sample(20, None)];
        write_csv(&path, &rows).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("schema,seed,n,vertices,k,family,trial,start_vertex,fraction,"));
        assert!(text.contains(",ktree,"));
        assert_eq!(read_trial_records(&path).unwrap(), rows);
    }

    #[test]
    fn mismatched_schema_is_refused() {
        let mut row = sample(10, Some(6));
        row.schema = "gossiplab.trial.v0".into();
        let mut buf = Vec::new();
        {
            let mut w = csv::Writer::from_writer(&mut buf);
            w.serialize(&row).unwrap();
        }
        let err = read_versioned_csv::<TrialRecord, _>(&buf[..], TRIAL_SCHEMA).unwrap_err();
        assert!(matches!(err, Error::Schema { .. }));
        let err = read_versioned_csv::<TrialRecord, _>(&b"seed,n\n1,2\n"[..], TRIAL_SCHEMA).unwrap_err();
        assert!(matches!(err, Error::Schema { .. }));
    }
}
