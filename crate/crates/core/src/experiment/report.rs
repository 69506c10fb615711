use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Family;

use super::records::{read_trial_records, TrialRecord};

/// Fitted exponents below this count as sub-polynomial growth.
pub const DICHOTOMY_BETA: f64 = 0.05;

/// Least-squares line `y = intercept + slope·x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope; zero for a perfect fit.
    pub slope_se: f64,
    pub points: usize,
}

/// Ordinary least squares. Needs at least three points with distinct `x`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<LinearFit> {
    let m = xs.len();
    if m != ys.len() || m < 3 {
        return Err(Error::InsufficientData(format!("a fit needs at least 3 points, got {m}")));
    }
    let mf = m as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / mf, ys.iter().sum::<f64>() / mf);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx <= 0.0 {
        return Err(Error::InsufficientData("fit abscissae are all equal".into()));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let slope_se = (ssr / (mf - 2.0) / sxx).sqrt();
    Ok(LinearFit { slope, intercept, slope_se, points: m })
}

/// Median with `+∞` allowed; the mean of the middle pair for even counts.
pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len();
    match m {
        0 => f64::NAN,
        _ if m % 2 == 1 => v[m / 2],
        _ => {
            let (a, b) = (v[m / 2 - 1], v[m / 2]);
            if a == b {
                a
            } else {
                0.5 * (a + b)
            }
        }
    }
}

/// Per-size medians. Censored runs count as `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SizeSummary {
    pub n: usize,
    pub trials: usize,
    pub censored: usize,
    pub median_rounds_to_fraction: f64,
    pub median_rounds_to_all: f64,
    /// Median over trials of `rounds_to_all / rounds_to_fraction`.
    pub median_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DichotomyReport {
    pub family: Family,
    pub k: usize,
    pub fraction: f64,
    pub sizes: Vec<SizeSummary>,
    /// `ln median(rounds_to_all)` against `ln n`.
    pub beta_all: LinearFit,
    /// `ln median(rounds_to_fraction)` against `ln n`.
    pub beta_fraction: LinearFit,
    /// `ln median(rounds_to_fraction)` against `ln ln n`.
    pub gamma_fraction: LinearFit,
    /// `(k-1)/(k²+k-1)`, the polynomial exponent for informing everyone.
    pub theory_beta_all: f64,
    pub ratio_at_largest: f64,
    /// `beta_all` exceeds [`DICHOTOMY_BETA`] and two standard errors while
    /// `beta_fraction` stays below [`DICHOTOMY_BETA`].
    pub dichotomy: bool,
}

impl DichotomyReport {
    /// Pretty JSON; infinite medians become `null`.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

pub fn theory_beta_all(k: usize) -> f64 {
    let k = k as f64;
    (k - 1.0) / (k * k + k - 1.0)
}

/// Medians and fits over rows from a spreading study.
pub fn summarize(rows: &[TrialRecord]) -> Result<DichotomyReport> {
    let first = rows.first().ok_or_else(|| Error::InsufficientData("no rows".into()))?;
    if let Some(r) = rows.iter().find(|r| r.k != first.k || r.family != first.family || r.fraction != first.fraction) {
        return Err(Error::InvalidParameter(format!(
            "rows mix runs: ({}, k={}, fraction={}) and ({}, k={}, fraction={})",
            first.family, first.k, first.fraction, r.family, r.k, r.fraction
        )));
    }
    let mut by_size: BTreeMap<usize, Vec<&TrialRecord>> = BTreeMap::new();
    for r in rows {
        by_size.entry(r.n).or_default().push(r);
    }
    if by_size.len() < 3 {
        return Err(Error::InsufficientData(format!("need at least 3 sizes, got {}", by_size.len())));
    }
    let sizes: Vec<SizeSummary> = by_size
        .iter()
        .map(|(&n, rs)| {
            let frac: Vec<f64> = rs.iter().map(|r| r.rounds_to_fraction_or_inf()).collect();
            let all: Vec<f64> = rs.iter().map(|r| r.rounds_to_all_or_inf()).collect();
            let ratio: Vec<f64> = rs
                .iter()
                .map(|r| r.rounds_to_all_or_inf() / r.rounds_to_fraction_or_inf().max(1.0))
                .collect();
            SizeSummary {
                n,
                trials: rs.len(),
                censored: rs.iter().filter(|r| r.censored).count(),
                median_rounds_to_fraction: median(&frac),
                median_rounds_to_all: median(&all),
                median_ratio: median(&ratio),
            }
        })
        .collect();

    let fit = |x: fn(f64) -> f64, y: fn(&SizeSummary) -> f64| {
        let pts: Vec<(f64, f64)> = sizes
            .iter()
            .filter(|s| y(s).is_finite() && y(s) > 0.0)
            .map(|s| (x(s.n as f64), y(s).ln()))
            .collect();
        let (xs, ys): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
        linear_fit(&xs, &ys)
    };
    let beta_all = fit(f64::ln, |s| s.median_rounds_to_all)?;
    let beta_fraction = fit(f64::ln, |s| s.median_rounds_to_fraction)?;
    let gamma_fraction = fit(|n| n.ln().ln(), |s| s.median_rounds_to_fraction)?;
    let dichotomy = beta_all.slope > DICHOTOMY_BETA
        && beta_all.slope > 2.0 * beta_all.slope_se
        && beta_fraction.slope < DICHOTOMY_BETA;
    Ok(DichotomyReport {
        family: first.family,
        k: first.k,
        fraction: first.fraction,
        ratio_at_largest: sizes.last().map_or(f64::NAN, |s| s.median_ratio),
        sizes,
        beta_all,
        beta_fraction,
        gamma_fraction,
        theory_beta_all: theory_beta_all(first.k),
        dichotomy,
    })
}

/// Reads every spread CSV in `paths` and summarizes them together.
pub fn cmd_report<P: AsRef<Path>>(paths: &[P]) -> Result<DichotomyReport> {
    let mut rows = Vec::new();
    for p in paths {
        rows.extend(read_trial_records(p.as_ref())?);
    }
    summarize(&rows)
}

impl fmt::Display for DichotomyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family {} k {} fraction {}", self.family, self.k, self.fraction)?;
        writeln!(f, "{:>10} {:>7} {:>9} {:>14} {:>14} {:>10}", "n", "trials", "censored", "med_fraction", "med_all", "med_ratio")?;
        for s in &self.sizes {
            writeln!(
                f,
                "{:>10} {:>7} {:>9} {:>14.2} {:>14.2} {:>10.3}",
                s.n, s.trials, s.censored, s.median_rounds_to_fraction, s.median_rounds_to_all, s.median_ratio
            )?;
        }
        writeln!(f, "beta_all      {:.4} ± {:.4}  (theory {:.4})", self.beta_all.slope, self.beta_all.slope_se, self.theory_beta_all)?;
        writeln!(f, "beta_fraction {:.4} ± {:.4}", self.beta_fraction.slope, self.beta_fraction.slope_se)?;
        writeln!(f, "gamma_fraction {:.4} ± {:.4}  (log-log-n slope)", self.gamma_fraction.slope, self.gamma_fraction.slope_se)?;
        writeln!(f, "ratio_at_largest {:.3}", self.ratio_at_largest)?;
        write!(f, "dichotomy {}", if self.dichotomy { "yes" } else { "no" })
    }
}
