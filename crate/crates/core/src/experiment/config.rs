use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Family;
use crate::machinery::ScheduleOverrides;

/// Version of the config file layout this build reads.
pub const CONFIG_VERSION: u32 = 1;

/// One experiment grid: every size in `sizes` is run `trials` times.
///
/// Sizes are growth steps, so a run of size `n` has `n + k` vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub version: u32,
    pub family: Family,
    pub k: usize,
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub master_seed: u64,
    /// Round cap for the protocol; `None` uses `ceil(10 n ln n)` on the
    /// vertex count.
    pub max_rounds: Option<usize>,
    /// Threshold for "almost all" informed.
    pub fraction: f64,
    pub schedule: ScheduleOverrides,
    pub out_dir: PathBuf,
    /// BFS sources used for the sampled diameter on large graphs.
    pub diameter_sources: usize,
    /// Barrier strength filter for the lower-bound study; `None` means `2k`.
    pub barrier_s_min: Option<usize>,
    /// Write the clique section into generated graph files.
    pub with_cliques: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            version: CONFIG_VERSION,
            family: Family::KTree,
            k: 2,
            sizes: vec![1000],
            trials: 10,
            master_seed: 0,
            max_rounds: None,
            fraction: 0.99,
            schedule: ScheduleOverrides::default(),
            out_dir: PathBuf::from("out"),
            diameter_sources: 8,
            barrier_s_min: None,
            with_cliques: false,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.version != CONFIG_VERSION {
            return bad(format!("config version {} is not supported (expected {CONFIG_VERSION})", self.version));
        }
        if self.k < self.family.min_k() {
            return bad(format!("{} needs k >= {}, got {}", self.family, self.family.min_k(), self.k));
        }
        if self.sizes.is_empty() {
            return bad("sizes must not be empty".into());
        }
        if self.sizes[0] == 0 || self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return bad(format!("sizes must be positive and strictly increasing, got {:?}", self.sizes));
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if !(self.fraction > 0.0 && self.fraction <= 1.0) {
            return bad(format!("fraction {} is outside (0, 1]", self.fraction));
        }
        if self.max_rounds == Some(0) {
            return bad("max_rounds must be at least 1".into());
        }
        if self.diameter_sources == 0 {
            return bad("diameter_sources must be at least 1".into());
        }
        if let Some(f) = self.schedule.f {
            if !(f.is_finite() && f > 0.0) {
                return bad(format!("schedule f must be positive, got {f}"));
            }
        }
        if self.schedule.m == Some(0) {
            return bad("schedule m must be at least 1".into());
        }
        Ok(())
    }

    pub fn vertex_count(&self, n: usize) -> usize {
        n + self.k
    }

    pub fn barrier_s_min(&self) -> usize {
        self.barrier_s_min.unwrap_or(2 * self.k)
    }
}
