//! Seeded experiment grids behind the command line tool.
//!
//! Every `(size, trial)` cell gets its own seed from the master seed, and
//! each kind of randomness (graph, start vertex, protocol, metrics) draws
//! from its own stream of that seed. Cells run on the rayon pool and rows
//! come back in grid order, so output files do not depend on thread count.

mod config;
mod records;
mod report;
mod runner;

pub use config::{ExperimentConfig, CONFIG_VERSION};
pub use records::{
    read_trial_records, read_versioned_csv, write_csv, write_jsonl, BarrierRecord, LowerBoundRecord, NiceSummary,
    PieceSizeRow, StructureRecord, TrialRecord, LOWERBOUND_SCHEMA, PIECE_SIZE_SCHEMA, STRUCTURE_SCHEMA,
    TRIAL_SCHEMA,
};
pub use report::{
    cmd_report, linear_fit, median, summarize, theory_beta_all, DichotomyReport, LinearFit, SizeSummary,
    DICHOTOMY_BETA,
};
pub use runner::{
    cells, cmd_generate, cmd_lowerbound, cmd_spread, cmd_structure, grow, lowerbound_outcomes, lowerbound_trial,
    spread_records, spread_trial, structure_records, structure_trial, Cell, LowerBoundOutcome, LowerBoundPaths,
    StructurePaths,
};
