use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::model::{norm, VectorField};
use crate::riemann::sample_on_grid;
use crate::schemes::{advance, SchemeKind};

use super::{HarnessError, RunConfig};

/// `E = 100 Σ_j |u_j - u(x_j)| / Σ_j |u(x_j)|` with Euclidean cell norms.
pub fn relative_error(approx: &VectorField, exact: &VectorField) -> Result<f64, HarnessError> {
    approx.check_same_shape(exact)?;
    let num: f64 = approx
        .cells()
        .zip(exact.cells())
        .map(|(a, e)| a.iter().zip(e).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt())
        .sum();
    let den: f64 = exact.cells().map(norm).sum();
    if den == 0.0 {
        return Err(HarnessError::DegenerateReference);
    }
    Ok(100.0 * num / den)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub level: u32,
    pub cells: usize,
    pub dx: f64,
    /// Relative error in percent; `None` when the level failed.
    pub error: Option<f64>,
    /// `log₂(E_prev / E)`; absent for the first row or next to a failure.
    pub rate: Option<f64>,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub scheme: SchemeKind,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub fn errors(&self) -> Vec<Option<f64>> {
        self.rows.iter().map(|r| r.error).collect()
    }

    pub fn row(&self, level: u32) -> Option<&ConvergenceRow> {
        self.rows.iter().find(|r| r.level == level)
    }
}

/// Error of one run against its exact solution at the final time.
pub fn run_error(config: &RunConfig) -> Result<f64, HarnessError> {
    let exact = config.exact_solution()?.ok_or(HarnessError::NoExactSolution)?;
    let traj = advance(config)?;
    let reference = sample_on_grid(exact.as_ref(), &config.grid, traj.final_time);
    relative_error(&traj.final_u(), &reference)
}

/// Refinement study on `2^N` cells of the base domain for each `N` in
/// `levels`. Levels run in parallel; each is a pure function of its
/// configuration, so the report does not depend on scheduling.
pub fn convergence_study(base: &RunConfig, levels: RangeInclusive<u32>) -> Result<ConvergenceReport, HarnessError> {
    if base.exact_solution()?.is_none() {
        return Err(HarnessError::NoExactSolution);
    }
    let levels: Vec<u32> = levels.collect();
    if let Some(&l) = levels.iter().find(|&&l| l > 30) {
        return Err(HarnessError::Config(format!("refinement level {l} is too large")));
    }
    let results: Vec<(u32, usize, f64, Result<f64, String>)> = levels
        .par_iter()
        .map(|&level| {
            let cells = 1usize << level;
            let dx = base.grid.length() / cells as f64;
            let outcome = base
                .with_cells(cells)
                .and_then(|cfg| {
                    let cfg = RunConfig { output_times: Vec::new(), ..cfg };
                    run_error(&cfg)
                })
                .map_err(|e| e.to_string());
            (level, cells, dx, outcome)
        })
        .collect();

    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(results.len());
    for (level, cells, dx, outcome) in results {
        let (error, failure) = match outcome {
            Ok(e) => (Some(e), None),
            Err(msg) => (None, Some(msg)),
        };
        let rate = match (rows.last().and_then(|r| r.error), error) {
            (Some(prev), Some(cur)) if cur > 0.0 => Some((prev / cur).log2()),
            _ => None,
        };
        rows.push(ConvergenceRow { level, cells, dx, error, rate, failure });
    }
    Ok(ConvergenceReport { scheme: base.scheme, rows })
}
