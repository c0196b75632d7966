use crate::model::{norm, PhiModel, VectorField};

use super::{BoundaryPolicy, Integrator, SchemeError};

/// Slack for the post-hoc max-principle check of the coupled scheme.
const MAX_PRINCIPLE_SLACK: f64 = 1e-10;
/// Slack for `|u_j| ≤ r_j` in the conservative split scheme.
const ORDERING_SLACK: f64 = 1e-9;

/// The coupled step increased `sup_j |u_j|`, which only happens when the
/// time step violates the CFL restriction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StabilityWarning {
    pub sup_before: f64,
    pub sup_after: f64,
}

fn speeds(model: &PhiModel, radii: impl Iterator<Item = f64>) -> Vec<f64> {
    radii.map(|r| model.phi(r)).collect()
}

/// `-D₋(u_j φ(|u_j|))`.
pub fn semi_discrete_rhs(model: &PhiModel, u: &VectorField, dx: f64, bc: BoundaryPolicy) -> VectorField {
    let n = u.n();
    let cells = u.num_cells();
    let phi = speeds(model, u.cells().map(norm));
    let mut out = Vec::with_capacity(n * cells);
    for j in 0..cells {
        let l = bc.left(j, cells);
        let (uj, ul) = (u.cell(j), u.cell(l));
        for i in 0..n {
            out.push(-(uj[i] * phi[j] - ul[i] * phi[l]) / dx);
        }
    }
    VectorField::from_raw(n, out)
}

/// `u + dt · rate`.
pub fn forward_euler(u: &VectorField, rate: &VectorField, dt: f64) -> VectorField {
    debug_assert_eq!(u.as_flat().len(), rate.as_flat().len());
    let data = u.as_flat().iter().zip(rate.as_flat()).map(|(a, b)| a + dt * b).collect();
    VectorField::from_raw(u.n(), data)
}

/// Two-stage strong-stability-preserving Runge–Kutta (Heun) on the
/// semi-discrete operator: the average of `u` and two Euler steps.
pub fn heun(model: &PhiModel, u: &VectorField, dt: f64, dx: f64, bc: BoundaryPolicy) -> VectorField {
    let u1 = forward_euler(u, &semi_discrete_rhs(model, u, dx, bc), dt);
    let u2 = forward_euler(&u1, &semi_discrete_rhs(model, &u1, dx, bc), dt);
    let data = u.as_flat().iter().zip(u2.as_flat()).map(|(a, b)| 0.5 * (a + b)).collect();
    VectorField::from_raw(u.n(), data)
}

pub fn step_semi_discrete(
    model: &PhiModel,
    u: &VectorField,
    dt: f64,
    dx: f64,
    bc: BoundaryPolicy,
    integrator: Integrator,
) -> VectorField {
    match integrator {
        Integrator::ForwardEuler => forward_euler(u, &semi_discrete_rhs(model, u, dx, bc), dt),
        Integrator::Heun => heun(model, u, dt, dx, bc),
    }
}

/// One step of the coupled upwind scheme
/// `u_j ← u_j - (dt/dx)(u_j φ(r_j) - u_{j-1} φ(r_{j-1}))`.
///
/// Returns a warning instead of failing when `sup_j r` grew.
pub fn step_coupled(
    model: &PhiModel,
    u: &VectorField,
    dt: f64,
    dx: f64,
    bc: BoundaryPolicy,
) -> (VectorField, Option<StabilityWarning>) {
    let n = u.n();
    let cells = u.num_cells();
    let radii = u.radii();
    let phi = speeds(model, radii.iter().copied());
    let mut next = u.clone();
    for j in 0..cells {
        let l = bc.left(j, cells);
        let (uj, ul) = (u.cell(j), u.cell(l));
        let out = next.cell_mut(j);
        for i in 0..n {
            // same operation order as forward_euler ∘ semi_discrete_rhs
            out[i] = uj[i] + dt * (-(uj[i] * phi[j] - ul[i] * phi[l]) / dx);
        }
    }
    let sup_before = radii.iter().copied().fold(0.0, f64::max);
    let sup_after = next.max_radius();
    let warning = (sup_after > sup_before + MAX_PRINCIPLE_SLACK).then_some(StabilityWarning { sup_before, sup_after });
    (next, warning)
}

/// Scalar upwind step for `r_t + f(r)_x = 0`.
pub fn scalar_upwind_step(model: &PhiModel, r: &[f64], dt: f64, dx: f64, bc: BoundaryPolicy) -> Vec<f64> {
    let cells = r.len();
    let f: Vec<f64> = r.iter().map(|&v| model.flux_unchecked(v)).collect();
    (0..cells)
        .map(|j| {
            let l = bc.left(j, cells);
            r[j] + dt * (-(f[j] - f[l]) / dx)
        })
        .collect()
}

/// Conservative split step: `r` by scalar upwind, `u` by the conservative
/// upwind update with transport speeds `φ(r_j)` taken from the carried `r`.
pub fn step_split_conservative(
    model: &PhiModel,
    r: &[f64],
    u: &VectorField,
    dt: f64,
    dx: f64,
    bc: BoundaryPolicy,
) -> Result<(Vec<f64>, VectorField), SchemeError> {
    check_len(r, u)?;
    let n = u.n();
    let cells = u.num_cells();
    let r_next = scalar_upwind_step(model, r, dt, dx, bc);
    let phi = speeds(model, r.iter().copied());
    let mut u_next = u.clone();
    for j in 0..cells {
        let l = bc.left(j, cells);
        let (uj, ul) = (u.cell(j), u.cell(l));
        let out = u_next.cell_mut(j);
        for i in 0..n {
            out[i] = uj[i] + dt * (-(uj[i] * phi[j] - ul[i] * phi[l]) / dx);
        }
    }
    for (j, (&rj, uj)) in r_next.iter().zip(u_next.cells()).enumerate() {
        let norm_u = norm(uj);
        if rj < norm_u - ORDERING_SLACK {
            return Err(SchemeError::InvariantBreach { cell: j, r: rj, norm_u });
        }
    }
    Ok((r_next, u_next))
}

/// Polar split step: `r` by scalar upwind and
/// `w_j ← (1 - λφ_j) w_j + λφ_j w_{j-1}` with `λ = dt/dx`, `φ_j = φ(r_j)`.
pub fn step_split_polar(
    model: &PhiModel,
    r: &[f64],
    w: &VectorField,
    dt: f64,
    dx: f64,
    bc: BoundaryPolicy,
) -> Result<(Vec<f64>, VectorField), SchemeError> {
    check_len(r, w)?;
    let n = w.n();
    let cells = w.num_cells();
    let lambda = dt / dx;
    let phi = speeds(model, r.iter().copied());
    let courant = lambda * phi.iter().copied().fold(0.0, f64::max);
    if courant >= 1.0 {
        return Err(SchemeError::Cfl { courant });
    }
    let r_next = scalar_upwind_step(model, r, dt, dx, bc);
    let mut w_next = w.clone();
    for j in 0..cells {
        let l = bc.left(j, cells);
        let c = lambda * phi[j];
        let (wj, wl) = (w.cell(j), w.cell(l));
        let out = w_next.cell_mut(j);
        for i in 0..n {
            out[i] = (1.0 - c) * wj[i] + c * wl[i];
        }
    }
    Ok((r_next, w_next))
}

/// `r_j = |u_j|`, `w_j = u_j / r_j` (zero where `r_j = 0`).
pub fn polar_split(u: &VectorField) -> (Vec<f64>, VectorField) {
    let r = u.radii();
    let data =
        u.cells().zip(&r).flat_map(|(c, &rj)| c.iter().map(move |v| if rj > 0.0 { v / rj } else { 0.0 })).collect();
    (r, VectorField::from_raw(u.n(), data))
}

/// `u_j = r_j w_j`.
pub fn polar_join(r: &[f64], w: &VectorField) -> VectorField {
    let data = w.cells().zip(r).flat_map(|(c, &rj)| c.iter().map(move |v| rj * v)).collect();
    VectorField::from_raw(w.n(), data)
}

fn check_len(r: &[f64], u: &VectorField) -> Result<(), SchemeError> {
    if r.len() != u.num_cells() {
        return Err(SchemeError::Config(format!(
            "radius has {} cells but the vector field has {}",
            r.len(),
            u.num_cells()
        )));
    }
    Ok(())
}
