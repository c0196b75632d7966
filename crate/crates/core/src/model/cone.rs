//! The invariant cone `Γ_δ = { u : δ|u| ≤ (e, u) }` and the direction
//! field `τ_j = u_j / (u_j, e)` it makes well defined.

use super::field::{dot, norm, VectorField};
use super::{ModelError, PhiModel};

/// Axis `e` (unit vector) and aperture `δ` of the cone `Γ_δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeSpec {
    e: Vec<f64>,
    delta: f64,
}

impl ConeSpec {
    pub fn new(e: Vec<f64>, delta: f64) -> Result<Self, ModelError> {
        let n = e.len();
        if n == 0 {
            return Err(ModelError::Shape("cone axis must have at least one component".into()));
        }
        if (norm(&e) - 1.0).abs() > 1e-12 {
            return Err(ModelError::InvalidParameter(format!("cone axis must be a unit vector, |e| = {}", norm(&e))));
        }
        let lower = ((n - 1) as f64 / n as f64).sqrt();
        if !(delta > lower && delta < 1.0) {
            return Err(ModelError::InvalidParameter(format!(
                "cone aperture must lie in ({lower}, 1) for n = {n}, got {delta}"
            )));
        }
        Ok(Self { e, delta })
    }

    /// Cone around the diagonal `e = (1, …, 1)/√n`.
    pub fn diagonal(n: usize, delta: f64) -> Result<Self, ModelError> {
        if n == 0 {
            return Err(ModelError::Shape("cone axis must have at least one component".into()));
        }
        Self::new(vec![1.0 / (n as f64).sqrt(); n], delta)
    }

    pub fn axis(&self) -> &[f64] {
        &self.e
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn dim(&self) -> usize {
        self.e.len()
    }

    /// `(e, u) - δ|u|`; non-negative exactly on the cone.
    pub fn margin(&self, u: &[f64]) -> f64 {
        dot(&self.e, u) - self.delta * norm(u)
    }

    fn check_dim(&self, field: &VectorField) -> Result<(), ModelError> {
        if field.n() != self.dim() {
            return Err(ModelError::Shape(format!(
                "field has {} components but the cone lives in dimension {}",
                field.n(),
                self.dim()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConeReport {
    pub members: Vec<bool>,
    /// `min_j ((e, u_j) - δ|u_j|)`
    pub margin: f64,
}

impl ConeReport {
    pub fn all_members(&self) -> bool {
        self.members.iter().all(|&m| m)
    }
}

pub fn cone_membership(field: &VectorField, cone: &ConeSpec) -> Result<ConeReport, ModelError> {
    cone.check_dim(field)?;
    let margins: Vec<f64> = field.cells().map(|u| cone.margin(u)).collect();
    Ok(ConeReport {
        members: margins.iter().map(|&m| m >= 0.0).collect(),
        margin: margins.iter().copied().fold(f64::INFINITY, f64::min),
    })
}

/// `τ_j = u_j / (u_j, e)`.
///
/// A zero cell takes the value of the nearest non-zero cell to its right;
/// if the whole field vanishes every `τ_j` is `e`.
pub fn tau(field: &VectorField, cone: &ConeSpec) -> Result<VectorField, ModelError> {
    cone.check_dim(field)?;
    let n = field.n();
    let cells = field.num_cells();
    let mut out = vec![0.0; n * cells];
    let mut fill: Option<Vec<f64>> = None;
    for j in (0..cells).rev() {
        let u = field.cell(j);
        let slot = &mut out[j * n..(j + 1) * n];
        if u.iter().all(|&v| v == 0.0) {
            match &fill {
                Some(t) => slot.copy_from_slice(t),
                None => slot.copy_from_slice(cone.axis()),
            }
            continue;
        }
        let projection = dot(u, cone.axis());
        if !(projection > 0.0) {
            return Err(ModelError::Degenerate { cell: j, projection });
        }
        for (s, v) in slot.iter_mut().zip(u) {
            *s = v / projection;
        }
        fill = Some(slot.to_vec());
    }
    Ok(VectorField::from_raw(n, out))
}

/// Transport speeds `λ_j = φ(r_{j-1}) (u_{j-1}, e) / (u_j, e)` of the
/// direction field, so that along the semi-discrete flow
/// `dτ_j/dt + λ_j D₋τ_j = 0`. Zero cells copy the speed of their right
/// neighbour. `left_ghost` supplies `u_{-1}`.
pub fn tau_speeds(
    model: &PhiModel,
    field: &VectorField,
    cone: &ConeSpec,
    left_ghost: &[f64],
) -> Result<Vec<f64>, ModelError> {
    cone.check_dim(field)?;
    if left_ghost.len() != field.n() {
        return Err(ModelError::Shape("ghost cell has the wrong number of components".into()));
    }
    let cells = field.num_cells();
    let mut speeds = vec![0.0; cells];
    let mut fill = 0.0;
    for j in (0..cells).rev() {
        let u = field.cell(j);
        if u.iter().all(|&v| v == 0.0) {
            speeds[j] = fill;
            continue;
        }
        let left = if j == 0 { left_ghost } else { field.cell(j - 1) };
        let projection = dot(u, cone.axis());
        if !(projection > 0.0) {
            return Err(ModelError::Degenerate { cell: j, projection });
        }
        speeds[j] = model.phi(norm(left)) * dot(left, cone.axis()) / projection;
        fill = speeds[j];
    }
    Ok(speeds)
}
