use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::poly::MultiPoly;

use super::image::image_size;
use super::sets::{gen_set, Family};
use super::HarnessError;

/// Default cap on `n_max^d`, the number of evaluations at the largest size.
pub const DEFAULT_BUDGET: u128 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    /// One family for all coordinates, or one per coordinate.
    pub families: Vec<Family>,
    pub n_grid: Vec<usize>,
    pub seed: u64,
    pub trials: usize,
    pub budget: u128,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub n: usize,
    /// Median over trials (the lower middle value for even counts).
    pub image_size: usize,
    pub trial_sizes: Vec<usize>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionReport {
    pub polynomial: String,
    pub vars: Vec<String>,
    pub d: usize,
    pub families: Vec<String>,
    pub rows: Vec<ScanRow>,
    pub fitted_exponent: f64,
    pub fit_residual: f64,
    pub seed: u64,
    pub trials: usize,
}

/// Serialized form. Timings are left out so equal inputs give equal bytes;
/// they appear in the CSV export instead.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionReportJson {
    pub polynomial: String,
    pub vars: Vec<String>,
    pub d: usize,
    pub families: Vec<String>,
    pub rows: Vec<RowJson>,
    pub fitted_exponent: String,
    pub fit_residual: String,
    pub seed: u64,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowJson {
    pub n: usize,
    pub image_size: usize,
    pub trial_sizes: Vec<usize>,
}

impl ExpansionReport {
    pub fn to_json(&self) -> ExpansionReportJson {
        ExpansionReportJson {
            polynomial: self.polynomial.clone(),
            vars: self.vars.clone(),
            d: self.d,
            families: self.families.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| RowJson {
                    n: r.n,
                    image_size: r.image_size,
                    trial_sizes: r.trial_sizes.clone(),
                })
                .collect(),
            fitted_exponent: format!("{:.6}", self.fitted_exponent),
            fit_residual: format!("{:.6}", self.fit_residual),
            seed: self.seed,
            trials: self.trials,
        }
    }

    /// `n,image_size,elapsed_ms` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,image_size,elapsed_ms\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{:.3}", r.n, r.image_size, r.elapsed_ms);
        }
        out
    }
}

/// Slope and RMS residual of the least-squares line through `(ln n, ln size)`.
pub fn fit_exponent(points: &[(usize, usize)]) -> Option<(f64, f64)> {
    if points.len() < 2 {
        return None;
    }
    let xy: Vec<(f64, f64)> = points
        .iter()
        .map(|&(n, s)| ((n as f64).ln(), (s.max(1) as f64).ln()))
        .collect();
    let m = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / m;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let icept = my - slope * mx;
    let rss: f64 = xy.iter().map(|p| (p.1 - icept - slope * p.0).powi(2)).sum();
    Some((slope, (rss / m).sqrt()))
}

/// Per-set seed for trial `t`, size `n`, coordinate `c` (SplitMix64 mixing).
fn set_seed(seed: u64, trial: usize, n: usize, coord: usize) -> u64 {
    let mut z = seed
        ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (n as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9)
        ^ (coord as u64).wrapping_mul(0x94D0_49BB_1331_11EB);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn growth_scan(f: &MultiPoly, config: &ScanConfig) -> Result<ExpansionReport, HarnessError> {
    let d = f.nvars();
    let families: Vec<Family> = match config.families.len() {
        1 => vec![config.families[0].clone(); d],
        k if k == d => config.families.clone(),
        k => return Err(HarnessError::DimensionMismatch { expected: d, found: k }),
    };
    let grid = &config.n_grid;
    if grid.len() < 2 || grid.windows(2).any(|w| w[0] >= w[1]) || grid[0] == 0 {
        return Err(HarnessError::InvalidGrid);
    }
    if config.trials == 0 {
        return Err(HarnessError::InvalidTrials);
    }
    let n_max = *grid.last().expect("nonempty");
    let needed = (n_max as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if needed > config.budget {
        return Err(HarnessError::BudgetExceeded {
            needed,
            budget: config.budget,
        });
    }
    // Deterministic families give the same sets in every trial.
    let trials = if families.iter().any(Family::is_random) { config.trials } else { 1 };
    let mut rows = Vec::with_capacity(grid.len());
    for &n in grid {
        let start = Instant::now();
        let mut sizes = Vec::with_capacity(trials);
        for t in 0..trials {
            let sets = families
                .iter()
                .enumerate()
                .map(|(c, fam)| gen_set(fam, n, set_seed(config.seed, t, n, c)))
                .collect::<Result<Vec<_>, _>>()?;
            sizes.push(image_size(f, &sets)?);
        }
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        rows.push(ScanRow {
            n,
            image_size: sorted[(sorted.len() - 1) / 2],
            trial_sizes: sizes,
            elapsed_ms: start.elapsed().as_secs_f64() * 1000.0,
        });
    }
    let points: Vec<(usize, usize)> = rows.iter().map(|r| (r.n, r.image_size)).collect();
    let (fitted_exponent, fit_residual) = fit_exponent(&points).expect("at least two distinct n");
    Ok(ExpansionReport {
        polynomial: f.to_string(),
        vars: f.names().to_vec(),
        d,
        families: families.iter().map(ToString::to_string).collect(),
        rows,
        fitted_exponent,
        fit_residual,
        seed: config.seed,
        trials: config.trials,
    })
}
