use crate::model::{PhiModel, VectorField};

use super::SchemeError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CflMode {
    /// `Δt = cfl · Δx / sup f'`.
    Practical,
    /// Additionally `Δt ≤ Δx / (C_φ (1 + sup r)²)`, the restriction under
    /// which the discrete weak-BV estimate holds. `None` derives `C_φ`
    /// from the model with [`default_c_phi`].
    Strict { c_phi: Option<f64> },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CflPolicy {
    cfl_number: f64,
    mode: CflMode,
}

impl Default for CflPolicy {
    fn default() -> Self {
        Self { cfl_number: 0.75, mode: CflMode::Practical }
    }
}

impl CflPolicy {
    pub fn practical(cfl_number: f64) -> Result<Self, SchemeError> {
        Self::new(cfl_number, CflMode::Practical)
    }

    pub fn strict(cfl_number: f64, c_phi: Option<f64>) -> Result<Self, SchemeError> {
        Self::new(cfl_number, CflMode::Strict { c_phi })
    }

    pub fn new(cfl_number: f64, mode: CflMode) -> Result<Self, SchemeError> {
        if !(cfl_number > 0.0 && cfl_number <= 1.0) {
            return Err(SchemeError::Config(format!("CFL number must lie in (0, 1], got {cfl_number}")));
        }
        if let CflMode::Strict { c_phi: Some(c) } = mode {
            if !(c > 0.0 && c.is_finite()) {
                return Err(SchemeError::Config(format!("C_phi must be positive, got {c}")));
            }
        }
        Ok(Self { cfl_number, mode })
    }

    pub fn cfl_number(&self) -> f64 {
        self.cfl_number
    }

    pub fn mode(&self) -> CflMode {
        self.mode
    }

    pub fn is_strict(&self) -> bool {
        matches!(self.mode, CflMode::Strict { .. })
    }
}

/// `C_φ = max(1, sup φ') · (1 + sup φ')` over `[0, r_max]`.
pub fn default_c_phi(model: &PhiModel) -> f64 {
    let d = model.max_dphi();
    d.max(1.0) * (1.0 + d)
}

/// Time step for a state whose largest radius is `sup_r`.
pub fn compute_dt_for_radius(model: &PhiModel, sup_r: f64, dx: f64, policy: &CflPolicy) -> Result<f64, SchemeError> {
    if !sup_r.is_finite() {
        return Err(SchemeError::State(format!("sup radius is {sup_r}")));
    }
    if !(dx > 0.0 && dx.is_finite()) {
        return Err(SchemeError::Config(format!("dx must be positive, got {dx}")));
    }
    let mut dt =
        if sup_r == 0.0 { policy.cfl_number * dx } else { policy.cfl_number * dx / model.max_wave_speed(sup_r)? };
    if let CflMode::Strict { c_phi } = policy.mode {
        let c = c_phi.unwrap_or_else(|| default_c_phi(model));
        dt = dt.min(dx / (c * (1.0 + sup_r).powi(2)));
    }
    Ok(dt)
}

pub fn compute_dt(model: &PhiModel, field: &VectorField, dx: f64, policy: &CflPolicy) -> Result<f64, SchemeError> {
    if let Some((i, j)) = field.first_non_finite() {
        return Err(SchemeError::State(format!("component {i} of cell {j} is not finite")));
    }
    compute_dt_for_radius(model, field.max_radius(), dx, policy)
}
