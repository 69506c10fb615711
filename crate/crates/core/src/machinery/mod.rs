//! Constructive objects behind the spreading-time bounds: the parameter
//! schedules, the highway forest, fast edges, pieces, nice/bad vertices and
//! barriers.

mod barrier;
mod fast;
mod forest;
mod nice;
mod pieces;
mod schedule;

pub use barrier::{find_all_barriers, find_barrier, force_barrier, verify_barrier, BarrierWitness};
pub use fast::{classify_fast_edges, forest_edges, is_fast_edge};
pub use forest::{build_highway_forest, clique_bound_threshold, verify_forest_clique_bound, ForestViolation, HighwayForest};
pub use nice::{classify_nice, NiceReport};
pub use pieces::{decompose_pieces, PieceDecomposition};
pub use schedule::{default_slow_function, lower_bound_cut, Schedule, ScheduleOverrides};
