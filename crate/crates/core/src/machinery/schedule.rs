use serde::{Deserialize, Serialize};

use crate::graph::Family;

/// `max(3, ln ln ln n)`: the default slowly growing function.
pub fn default_slow_function(n: usize) -> f64 {
    let lll = (n as f64).ln().ln().ln();
    if lll.is_finite() {
        lll.max(3.0)
    } else {
        3.0
    }
}

/// Cut round `m`, moment order `q` and degree threshold `τ` for the
/// almost-all upper bound, natural logarithms throughout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub n: usize,
    pub k: usize,
    pub family: Family,
    pub f: f64,
    pub m: usize,
    pub q: usize,
    pub tau: usize,
}

/// Optional replacements for the computed schedule values.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct ScheduleOverrides {
    pub f: Option<f64>,
    pub m: Option<usize>,
    pub q: Option<usize>,
    pub tau: Option<usize>,
}

impl Schedule {
    /// For k-trees: `m = ⌈n / (f^(3/(k-1)) (ln n)^(2/(k-1)))⌉`,
    /// `τ = 2k + q (n/m)^(1-1/k)`. For k-Apollonian networks:
    /// `m = ⌈n / ((ln n)^(2/(k-1)) f^((2k-2)/(k²-2k)))⌉`,
    /// `τ = 2k + q (n/m)^((k-2)/(k-1))`. In both, `q = ⌈4 ln ln n⌉`.
    /// `m` is clamped into `1..=n`.
    pub fn upper_bound(family: Family, k: usize, n: usize, overrides: &ScheduleOverrides) -> Self {
        let f = overrides.f.unwrap_or_else(|| default_slow_function(n));
        let (nf, kf) = (n as f64, k as f64);
        let ln = nf.ln().max(f64::MIN_POSITIVE);
        let m = overrides.m.unwrap_or_else(|| {
            let denom = match family {
                Family::KTree => f.powf(3.0 / (kf - 1.0)) * ln.powf(2.0 / (kf - 1.0)),
                Family::KApollonian => ln.powf(2.0 / (kf - 1.0)) * f.powf((2.0 * kf - 2.0) / (kf * kf - 2.0 * kf)),
            };
            (nf / denom).ceil() as usize
        });
        let m = m.clamp(1, n.max(1));
        let q = overrides.q.unwrap_or_else(|| (4.0 * ln.ln()).ceil().max(1.0) as usize);
        let exponent = match family {
            Family::KTree => 1.0 - 1.0 / kf,
            Family::KApollonian => (kf - 2.0) / (kf - 1.0),
        };
        let tau = overrides
            .tau
            .unwrap_or_else(|| (2.0 * kf + q as f64 * (nf / m as f64).powf(exponent)).floor() as usize);
        Schedule { n, k, family, f, m, q, tau }
    }
}

/// Cut round for the lower-bound study: `m = ⌈f · n^(1 - k/(k²+k-1))⌉`,
/// clamped into `1..=n`.
pub fn lower_bound_cut(k: usize, n: usize, f: f64) -> usize {
    let kf = k as f64;
    let m = (f * (n as f64).powf(1.0 - kf / (kf * kf + kf - 1.0))).ceil() as usize;
    m.clamp(1, n.max(1))
}
