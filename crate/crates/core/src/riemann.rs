//! Closed-form solutions for `φ(r) = r²`, where `f(r) = r³` and the
//! genuinely nonlinear speed is `3r²`.
//!
//! A Riemann problem splits into a contact moving at `|U_l|²` (the
//! direction jumps, the radius does not) followed by a radius wave that is
//! a rarefaction fan when `|U_l| < |U_r|` and a shock otherwise.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::model::{norm, Grid1D, PhiModel, VectorField};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("exact solutions are only available for phi(r) = r^2")]
    UnsupportedModel,
    #[error("degenerate data: {0}")]
    DegenerateData(String),
    #[error("exact solution requested at t = {0}; t must be positive")]
    Domain(f64),
}

/// Two constant states separated at `x0`.
#[derive(Clone, Debug, PartialEq)]
pub struct RiemannData {
    pub u_left: Vec<f64>,
    pub u_right: Vec<f64>,
    pub x0: f64,
}

impl RiemannData {
    pub fn new(u_left: Vec<f64>, u_right: Vec<f64>) -> Result<Self, OracleError> {
        Self::with_location(u_left, u_right, 0.0)
    }

    pub fn with_location(u_left: Vec<f64>, u_right: Vec<f64>, x0: f64) -> Result<Self, OracleError> {
        if u_left.is_empty() || u_left.len() != u_right.len() {
            return Err(OracleError::DegenerateData("states must have the same, non-zero dimension".into()));
        }
        if !u_left.iter().chain(&u_right).chain([&x0]).all(|v| v.is_finite()) {
            return Err(OracleError::DegenerateData("states and jump location must be finite".into()));
        }
        Ok(Self { u_left, u_right, x0 })
    }

    pub fn dim(&self) -> usize {
        self.u_left.len()
    }

    /// Piecewise-constant initial data; the jump point itself belongs to the left state.
    pub fn initial(&self, x: f64) -> Vec<f64> {
        if x <= self.x0 {
            self.u_left.clone()
        } else {
            self.u_right.clone()
        }
    }
}

fn require_quadratic(model: &PhiModel) -> Result<(), OracleError> {
    if model.is_quadratic() {
        Ok(())
    } else {
        Err(OracleError::UnsupportedModel)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RadiusWave {
    /// Fan between `3|U_l|²` and `3|U_r|²`.
    Rarefaction {
        head: f64,
        tail: f64,
    },
    Shock {
        speed: f64,
    },
    /// `|U_l| = |U_r|`: only the contact remains.
    None,
}

/// Self-similar solution `Ū(ξ)`, `ξ = (x - x0)/t`.
#[derive(Clone, Debug)]
pub struct SystemRiemannSolution {
    data: RiemannData,
    r_left: f64,
    r_right: f64,
    u_middle: Vec<f64>,
    wave: RadiusWave,
}

impl SystemRiemannSolution {
    pub fn new(model: &PhiModel, data: RiemannData) -> Result<Self, OracleError> {
        require_quadratic(model)?;
        let r_left = norm(&data.u_left);
        let r_right = norm(&data.u_right);
        if r_left == 0.0 || r_right == 0.0 {
            return Err(OracleError::DegenerateData("both states must be non-zero".into()));
        }
        let u_middle = data.u_right.iter().map(|v| r_left / r_right * v).collect();
        let wave = if r_left < r_right {
            RadiusWave::Rarefaction { head: 3.0 * r_left * r_left, tail: 3.0 * r_right * r_right }
        } else if r_left > r_right {
            RadiusWave::Shock { speed: r_left * r_left + r_left * r_right + r_right * r_right }
        } else {
            RadiusWave::None
        };
        Ok(Self { data, r_left, r_right, u_middle, wave })
    }

    pub fn data(&self) -> &RiemannData {
        &self.data
    }

    /// Speed `|U_l|²` of the contact.
    pub fn contact_speed(&self) -> f64 {
        self.r_left * self.r_left
    }

    pub fn radius_wave(&self) -> RadiusWave {
        self.wave
    }

    /// `U_m = (|U_l| / |U_r|) U_r`.
    pub fn middle_state(&self) -> &[f64] {
        &self.u_middle
    }

    /// `Ū(ξ)`. On a boundary between two regions the left region wins.
    pub fn eval(&self, xi: f64) -> Vec<f64> {
        if xi <= self.contact_speed() {
            return self.data.u_left.clone();
        }
        match self.wave {
            RadiusWave::Rarefaction { head, tail } => {
                if xi <= head {
                    self.u_middle.clone()
                } else if xi <= tail {
                    let scale = (xi / 3.0).sqrt() / self.r_right;
                    self.data.u_right.iter().map(|v| scale * v).collect()
                } else {
                    self.data.u_right.clone()
                }
            }
            RadiusWave::Shock { speed } if xi <= speed => self.u_middle.clone(),
            _ => self.data.u_right.clone(),
        }
    }
}

/// `Ū(ξ)` for the system Riemann problem with `φ(r) = r²`.
pub fn solve_system_riemann(model: &PhiModel, data: &RiemannData, xi: f64) -> Result<Vec<f64>, OracleError> {
    Ok(SystemRiemannSolution::new(model, data.clone())?.eval(xi))
}

/// Initial direction field of the polar experiments.
#[derive(Clone)]
pub enum DirectionProfile {
    /// `(1, 0)` outside `[0.2, 0.7]`, `(cos 8π(x-0.2), sin 8π(x-0.2))` inside.
    Rotation,
    /// `(1, 0)` for `x ≤ 0.2`, `(-1, 0)` beyond.
    Flip,
    Custom(Arc<dyn Fn(f64) -> Vec<f64> + Send + Sync>),
}

impl fmt::Debug for DirectionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DirectionProfile::Rotation => f.write_str("Rotation"),
            DirectionProfile::Flip => f.write_str("Flip"),
            DirectionProfile::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl DirectionProfile {
    pub fn eval(&self, x: f64) -> Vec<f64> {
        match self {
            DirectionProfile::Rotation => {
                if (0.2..=0.7).contains(&x) {
                    let angle = 8.0 * std::f64::consts::PI * (x - 0.2);
                    vec![angle.cos(), angle.sin()]
                } else {
                    vec![1.0, 0.0]
                }
            }
            DirectionProfile::Flip => {
                if x <= 0.2 {
                    vec![1.0, 0.0]
                } else {
                    vec![-1.0, 0.0]
                }
            }
            DirectionProfile::Custom(f) => f(x),
        }
    }

    pub fn dim(&self) -> usize {
        self.eval(0.0).len()
    }
}

/// Radius jump at `x = 0` carrying a unit direction profile: `U₀ = r₀ w₀`.
#[derive(Clone, Debug)]
pub struct Exp2Data {
    pub r_left: f64,
    pub r_right: f64,
    pub w0: DirectionProfile,
}

impl Exp2Data {
    pub fn new(r_left: f64, r_right: f64, w0: DirectionProfile) -> Result<Self, OracleError> {
        if !(r_left > 0.0 && r_right > 0.0 && r_left.is_finite() && r_right.is_finite()) {
            return Err(OracleError::DegenerateData(format!(
                "radii must be positive and finite, got ({r_left}, {r_right})"
            )));
        }
        Ok(Self { r_left, r_right, w0 })
    }

    pub fn initial_radius(&self, x: f64) -> f64 {
        if x <= 0.0 {
            self.r_left
        } else {
            self.r_right
        }
    }

    pub fn initial(&self, x: f64) -> Vec<f64> {
        let r = self.initial_radius(x);
        self.w0.eval(x).into_iter().map(|v| r * v).collect()
    }
}

/// Exact `(r, w)` at `(x, t)` for the radius-jump experiments.
///
/// Each direction value is traced back along the particle paths
/// `dx/dt = r²` to its starting point.
pub fn exp2_exact(model: &PhiModel, data: &Exp2Data, x: f64, t: f64) -> Result<(f64, Vec<f64>), OracleError> {
    require_quadratic(model)?;
    if !(t > 0.0) {
        return Err(OracleError::Domain(t));
    }
    let (rm, rp) = (data.r_left, data.r_right);
    let contact = rm * rm * t;
    let behind_contact = (rm / rp) * (x - contact);
    let (r, origin) = if rm >= rp {
        let shock = (rm * rm + rm * rp + rp * rp) * t;
        if x <= contact {
            (rm, x - contact)
        } else if x <= shock {
            (rm, behind_contact)
        } else {
            (rp, x - rp * rp * t)
        }
    } else {
        let head = 3.0 * rm * rm * t;
        let tail = 3.0 * rp * rp * t;
        if x <= contact {
            (rm, x - contact)
        } else if x <= head {
            (rm, behind_contact)
        } else if x <= tail {
            let origin = 2.0 / (3.0 * 3f64.sqrt() * rp) * x.powf(1.5) / t.sqrt();
            ((x / (3.0 * t)).sqrt(), origin)
        } else {
            (rp, x - rp * rp * t)
        }
    };
    Ok((r, data.w0.eval(origin)))
}

/// Anything that can be sampled as ground truth at `(x, t)`.
pub trait ExactSolution: Send + Sync {
    fn dim(&self) -> usize;
    /// `u(x, t)`; `t = 0` returns the initial data.
    fn eval(&self, x: f64, t: f64) -> Vec<f64>;
}

impl ExactSolution for SystemRiemannSolution {
    fn dim(&self) -> usize {
        self.data.dim()
    }

    fn eval(&self, x: f64, t: f64) -> Vec<f64> {
        if t <= 0.0 {
            return self.data.initial(x);
        }
        SystemRiemannSolution::eval(self, (x - self.data.x0) / t)
    }
}

/// [`exp2_exact`] packaged as `u = r w` after the model check.
#[derive(Clone, Debug)]
pub struct Exp2Solution {
    model: PhiModel,
    data: Exp2Data,
}

impl Exp2Solution {
    pub fn new(model: &PhiModel, data: Exp2Data) -> Result<Self, OracleError> {
        require_quadratic(model)?;
        Ok(Self { model: model.clone(), data })
    }
}

impl ExactSolution for Exp2Solution {
    fn dim(&self) -> usize {
        self.data.w0.dim()
    }

    fn eval(&self, x: f64, t: f64) -> Vec<f64> {
        if t <= 0.0 {
            return self.data.initial(x);
        }
        let (r, w) = exp2_exact(&self.model, &self.data, x, t).expect("validated at construction");
        w.into_iter().map(|v| r * v).collect()
    }
}

/// Exact solution evaluated at the cell centres of `grid`.
pub fn sample_on_grid(exact: &dyn ExactSolution, grid: &Grid1D, t: f64) -> VectorField {
    let n = exact.dim();
    let mut field = VectorField::zeros(n, grid.num_cells());
    for j in 0..grid.num_cells() {
        field.cell_mut(j).copy_from_slice(&exact.eval(grid.center(j), t));
    }
    field
}
