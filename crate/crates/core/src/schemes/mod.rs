//! Explicit upwind time steppers.
//!
//! All wave speeds are non-negative (`φ ≥ 0`, `φ' ≥ 0`), so every scheme
//! uses the backward difference `D₋ a_j = (a_j - a_{j-1}) / dx` and needs
//! only a left ghost cell. Each stepper reads time level `n` only.

mod advance;
mod cfl;
mod entropy;
mod step;

pub use advance::{advance, advance_from, SchemeState, Snapshot, StepDiagnostics, Trajectory};
pub use cfl::{compute_dt, compute_dt_for_radius, default_c_phi, CflMode, CflPolicy};
pub use entropy::{entropy_residual, entropy_residual_with};
pub use step::{
    forward_euler, heun, polar_join, polar_split, scalar_upwind_step, semi_discrete_rhs, step_coupled,
    step_semi_discrete, step_split_conservative, step_split_polar, StabilityWarning,
};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::ModelError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Integrator {
    ForwardEuler,
    Heun,
}

/// Which discretisation advances the solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    /// `D₊ᵗ u_j + D₋(u_j φ(|u_j|)) = 0`.
    Coupled,
    /// Scalar upwind for `r`, conservative update of `u` driven by the carried `r`.
    SplitConservative,
    /// Scalar upwind for `r`, non-conservative transport of `w = u/r`.
    SplitPolar,
    /// Method of lines on the semi-discrete operator.
    SemiDiscrete(Integrator),
}

impl SchemeKind {
    pub const CLI_NAMES: [&'static str; 5] = ["coupled", "split-cons", "split-polar", "semi", "semi-heun"];

    pub fn cli_name(&self) -> &'static str {
        match self {
            SchemeKind::Coupled => "coupled",
            SchemeKind::SplitConservative => "split-cons",
            SchemeKind::SplitPolar => "split-polar",
            SchemeKind::SemiDiscrete(Integrator::ForwardEuler) => "semi",
            SchemeKind::SemiDiscrete(Integrator::Heun) => "semi-heun",
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for SchemeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "coupled" => Ok(SchemeKind::Coupled),
            "split-cons" => Ok(SchemeKind::SplitConservative),
            "split-polar" => Ok(SchemeKind::SplitPolar),
            "semi" => Ok(SchemeKind::SemiDiscrete(Integrator::ForwardEuler)),
            "semi-heun" => Ok(SchemeKind::SemiDiscrete(Integrator::Heun)),
            other => Err(format!("unknown scheme '{other}', expected one of: {}", Self::CLI_NAMES.join(", "))),
        }
    }
}

/// Left ghost cell rule.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum BoundaryPolicy {
    /// Ghost copies the first cell.
    #[default]
    ZeroGradient,
    /// Ghost copies the last cell.
    Periodic,
}

impl BoundaryPolicy {
    #[inline]
    pub(crate) fn left_ghost_index(&self, cells: usize) -> usize {
        match self {
            BoundaryPolicy::ZeroGradient => 0,
            BoundaryPolicy::Periodic => cells - 1,
        }
    }

    /// Index of the left neighbour of cell `j`.
    #[inline]
    pub(crate) fn left(&self, j: usize, cells: usize) -> usize {
        if j == 0 {
            self.left_ghost_index(cells)
        } else {
            j - 1
        }
    }
}

impl FromStr for BoundaryPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zero-gradient" => Ok(BoundaryPolicy::ZeroGradient),
            "periodic" => Ok(BoundaryPolicy::Periodic),
            other => Err(format!("unknown boundary policy '{other}', expected zero-gradient or periodic")),
        }
    }
}

impl fmt::Display for BoundaryPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryPolicy::ZeroGradient => "zero-gradient",
            BoundaryPolicy::Periodic => "periodic",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SchemeError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("non-finite state: {0}")]
    State(String),
    #[error("CFL violated: dt/dx * sup phi = {courant} >= 1")]
    Cfl { courant: f64 },
    #[error("carried radius fell below |u| at cell {cell}: r = {r}, |u| = {norm_u}")]
    InvariantBreach { cell: usize, r: f64, norm_u: f64 },
    #[error("NaN or infinity produced at step {step}")]
    NonFinite { step: usize },
    #[error("invalid run configuration: {0}")]
    Config(String),
}
