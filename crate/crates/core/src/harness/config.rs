use std::fmt;
use std::sync::Arc;

use crate::model::{validate_phi, Grid1D, PhiModel, VectorField};
use crate::riemann::{ExactSolution, Exp2Data, Exp2Solution, RiemannData, SystemRiemannSolution};
use crate::schemes::{BoundaryPolicy, CflPolicy, SchemeKind};

use super::HarnessError;

/// Sub-samples per cell when averaging a non-piecewise-constant profile.
const AVERAGING_SUBSAMPLES: usize = 32;

#[derive(Clone)]
pub enum InitialData {
    Riemann(RiemannData),
    Exp2(Exp2Data),
    Profile {
        dim: usize,
        f: Arc<dyn Fn(f64) -> Vec<f64> + Send + Sync>,
    },
    /// Cell values given directly; must match the grid.
    Cells(VectorField),
}

impl fmt::Debug for InitialData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialData::Riemann(d) => f.debug_tuple("Riemann").field(d).finish(),
            InitialData::Exp2(d) => f.debug_tuple("Exp2").field(d).finish(),
            InitialData::Profile { dim, .. } => write!(f, "Profile {{ dim: {dim} }}"),
            InitialData::Cells(u) => write!(f, "Cells({}x{})", u.n(), u.num_cells()),
        }
    }
}

impl InitialData {
    pub fn dim(&self) -> usize {
        match self {
            InitialData::Riemann(d) => d.dim(),
            InitialData::Exp2(d) => d.w0.dim(),
            InitialData::Profile { dim, .. } => *dim,
            InitialData::Cells(u) => u.n(),
        }
    }

    fn point(&self, x: f64) -> Vec<f64> {
        match self {
            InitialData::Riemann(d) => d.initial(x),
            InitialData::Exp2(d) => d.initial(x),
            InitialData::Profile { f, .. } => f(x),
            InitialData::Cells(_) => unreachable!("cell data has no point values"),
        }
    }
}

/// How continuous initial data become cell values.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum InitRule {
    /// `u⁰_j = u₀(x_j)`.
    #[default]
    Midpoint,
    /// Cell averages; exact for Riemann data (the cut cell mixes the two
    /// states in proportion), sub-sampled otherwise.
    CellAverage,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub scheme: SchemeKind,
    pub model: PhiModel,
    pub grid: Grid1D,
    pub cfl: CflPolicy,
    pub bc: BoundaryPolicy,
    pub t_end: f64,
    pub initial: InitialData,
    pub init_rule: InitRule,
    pub output_times: Vec<f64>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(HarnessError::Config(format!(
                "final time must be finite and non-negative, got {}",
                self.t_end
            )));
        }
        if self.output_times.windows(2).any(|w| w[1] < w[0]) {
            return Err(HarnessError::Config("output times must be sorted".into()));
        }
        if let Some(t) = self.output_times.iter().find(|&&t| !(0.0..=self.t_end).contains(&t)) {
            return Err(HarnessError::Config(format!("output time {t} outside [0, {}]", self.t_end)));
        }
        if let InitialData::Cells(u) = &self.initial {
            if u.num_cells() != self.grid.num_cells() {
                return Err(HarnessError::Config(format!(
                    "initial field has {} cells, grid has {}",
                    u.num_cells(),
                    self.grid.num_cells()
                )));
            }
        }
        let report = validate_phi(&self.model, 100)?;
        if let Some(v) = report.violations.first() {
            return Err(HarnessError::Config(format!("phi violates {} at r = {}", v.assumption, v.r)));
        }
        Ok(())
    }

    pub fn initial_field(&self) -> Result<VectorField, HarnessError> {
        let grid = &self.grid;
        if let InitialData::Cells(u) = &self.initial {
            return Ok(u.clone());
        }
        let n = self.initial.dim();
        let mut out = Vec::with_capacity(n * grid.num_cells());
        for j in 0..grid.num_cells() {
            let cell = match self.init_rule {
                InitRule::Midpoint => self.initial.point(grid.center(j)),
                InitRule::CellAverage => self.cell_average(j),
            };
            if cell.len() != n {
                return Err(HarnessError::Config(format!(
                    "initial profile returned {} components, expected {n}",
                    cell.len()
                )));
            }
            out.extend(cell);
        }
        Ok(VectorField::from_flat(n, out)?)
    }

    fn cell_average(&self, j: usize) -> Vec<f64> {
        let (a, b) = self.grid.cell_bounds(j);
        if let InitialData::Riemann(d) = &self.initial {
            let left = ((d.x0 - a) / (b - a)).clamp(0.0, 1.0);
            return d.u_left.iter().zip(&d.u_right).map(|(l, r)| left * l + (1.0 - left) * r).collect();
        }
        let h = (b - a) / AVERAGING_SUBSAMPLES as f64;
        let mut acc = vec![0.0; self.initial.dim()];
        for k in 0..AVERAGING_SUBSAMPLES {
            for (s, v) in acc.iter_mut().zip(self.initial.point(a + (k as f64 + 0.5) * h)) {
                *s += v;
            }
        }
        acc.iter_mut().for_each(|v| *v /= AVERAGING_SUBSAMPLES as f64);
        acc
    }

    /// Ground truth for this configuration, when one is known.
    pub fn exact_solution(&self) -> Result<Option<Box<dyn ExactSolution>>, HarnessError> {
        Ok(match &self.initial {
            InitialData::Riemann(d) => Some(Box::new(SystemRiemannSolution::new(&self.model, d.clone())?)),
            InitialData::Exp2(d) => Some(Box::new(Exp2Solution::new(&self.model, d.clone())?)),
            _ => None,
        })
    }

    /// Same configuration on `num_cells` cells of the same domain.
    pub fn with_cells(&self, num_cells: usize) -> Result<Self, HarnessError> {
        let grid = Grid1D::new(self.grid.x_min(), self.grid.x_max(), num_cells)?;
        Ok(Self { grid, ..self.clone() })
    }
}
