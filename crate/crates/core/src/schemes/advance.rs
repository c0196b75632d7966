use crate::harness::RunConfig;
use crate::model::{scalar_total_variation, PhiModel, VectorField};

use super::step::{
    polar_join, polar_split, step_coupled, step_semi_discrete, step_split_conservative, step_split_polar,
    StabilityWarning,
};
use super::{compute_dt_for_radius, BoundaryPolicy, CflPolicy, SchemeError, SchemeKind};

/// State carried between steps; the split schemes carry `r` separately.
#[derive(Clone, Debug, PartialEq)]
pub enum SchemeState {
    Coupled(VectorField),
    SplitConservative { r: Vec<f64>, u: VectorField },
    SplitPolar { r: Vec<f64>, w: VectorField },
    SemiDiscrete(VectorField),
}

impl SchemeState {
    pub fn initial(kind: SchemeKind, u0: &VectorField) -> Self {
        match kind {
            SchemeKind::Coupled => SchemeState::Coupled(u0.clone()),
            SchemeKind::SplitConservative => SchemeState::SplitConservative { r: u0.radii(), u: u0.clone() },
            SchemeKind::SplitPolar => {
                let (r, w) = polar_split(u0);
                SchemeState::SplitPolar { r, w }
            }
            SchemeKind::SemiDiscrete(_) => SchemeState::SemiDiscrete(u0.clone()),
        }
    }

    /// The approximation of `u`; `r w` for the polar split.
    pub fn u(&self) -> VectorField {
        match self {
            SchemeState::Coupled(u) | SchemeState::SemiDiscrete(u) => u.clone(),
            SchemeState::SplitConservative { u, .. } => u.clone(),
            SchemeState::SplitPolar { r, w } => polar_join(r, w),
        }
    }

    /// The radius the scheme evolves: `|u|` for the unsplit schemes, the
    /// carried `r` otherwise.
    pub fn radius(&self) -> Vec<f64> {
        match self {
            SchemeState::Coupled(u) | SchemeState::SemiDiscrete(u) => u.radii(),
            SchemeState::SplitConservative { r, .. } | SchemeState::SplitPolar { r, .. } => r.clone(),
        }
    }

    fn sup_radius(&self) -> f64 {
        match self {
            SchemeState::Coupled(u) | SchemeState::SemiDiscrete(u) => u.max_radius(),
            SchemeState::SplitConservative { r, .. } | SchemeState::SplitPolar { r, .. } => {
                r.iter().copied().fold(0.0, f64::max)
            }
        }
    }

    fn is_finite(&self) -> bool {
        match self {
            SchemeState::Coupled(u) | SchemeState::SemiDiscrete(u) => u.is_finite(),
            SchemeState::SplitConservative { r, u } => u.is_finite() && r.iter().all(|v| v.is_finite()),
            SchemeState::SplitPolar { r, w } => w.is_finite() && r.iter().all(|v| v.is_finite()),
        }
    }

    pub fn step(
        &self,
        kind: SchemeKind,
        model: &PhiModel,
        dt: f64,
        dx: f64,
        bc: BoundaryPolicy,
    ) -> Result<(Self, Option<StabilityWarning>), SchemeError> {
        let next = match (self, kind) {
            (SchemeState::Coupled(u), SchemeKind::Coupled) => {
                let (u, warning) = step_coupled(model, u, dt, dx, bc);
                return Ok((SchemeState::Coupled(u), warning));
            }
            (SchemeState::SemiDiscrete(u), SchemeKind::SemiDiscrete(integrator)) => {
                SchemeState::SemiDiscrete(step_semi_discrete(model, u, dt, dx, bc, integrator))
            }
            (SchemeState::SplitConservative { r, u }, SchemeKind::SplitConservative) => {
                let (r, u) = step_split_conservative(model, r, u, dt, dx, bc)?;
                SchemeState::SplitConservative { r, u }
            }
            (SchemeState::SplitPolar { r, w }, SchemeKind::SplitPolar) => {
                let (r, w) = step_split_polar(model, r, w, dt, dx, bc)?;
                SchemeState::SplitPolar { r, w }
            }
            (_, kind) => return Err(SchemeError::Config(format!("state does not belong to scheme {kind}"))),
        };
        Ok((next, None))
    }
}

/// Per-step diagnostics, measured on the state reached after the step.
#[derive(Clone, Debug, PartialEq)]
pub struct StepDiagnostics {
    pub step: usize,
    pub time: f64,
    pub dt: f64,
    /// `‖u_Δx(·, t_n)‖_{L²}`
    pub l2_norm: f64,
    /// `sup_j r_j`
    pub linf_radius: f64,
    /// `Σ_j |r_j - r_{j-1}|`
    pub tv_radius: f64,
    /// Running `Σ_n Δt Δx Σ_j Δx |D₋u^n_j|²`, ghost interface included.
    pub weak_bv_accum: f64,
    /// Per-component `Δx Σ_j u_j`.
    pub mass: Vec<f64>,
    pub stability_warning: Option<StabilityWarning>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub time: f64,
    pub u: VectorField,
    pub r: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub scheme: SchemeKind,
    pub dx: f64,
    pub snapshots: Vec<Snapshot>,
    /// Entry 0 describes the initial state.
    pub diagnostics: Vec<StepDiagnostics>,
    pub final_state: SchemeState,
    pub final_time: f64,
}

impl Trajectory {
    pub fn steps(&self) -> usize {
        self.diagnostics.len().saturating_sub(1)
    }

    pub fn final_u(&self) -> VectorField {
        self.final_state.u()
    }

    pub fn stability_warnings(&self) -> impl Iterator<Item = &StabilityWarning> {
        self.diagnostics.iter().filter_map(|d| d.stability_warning.as_ref())
    }
}

/// Runs a configuration to its final time.
pub fn advance(config: &RunConfig) -> Result<Trajectory, SchemeError> {
    config.validate().map_err(|e| SchemeError::Config(e.to_string()))?;
    let u0 = config.initial_field().map_err(|e| SchemeError::Config(e.to_string()))?;
    advance_from(
        config.scheme,
        &config.model,
        &u0,
        config.grid.dx(),
        &config.cfl,
        config.bc,
        config.t_end,
        &config.output_times,
    )
}

/// Time loop from an explicit initial field.
///
/// `dt` is recomputed from the current state every step and clipped so
/// that every output time and the final time are hit exactly. The model's
/// `r_max` is widened to `1.05 sup_j |u⁰_j|` when the data exceed it.
#[allow(clippy::too_many_arguments)]
pub fn advance_from(
    scheme: SchemeKind,
    model: &PhiModel,
    u0: &VectorField,
    dx: f64,
    cfl: &CflPolicy,
    bc: BoundaryPolicy,
    t_end: f64,
    output_times: &[f64],
) -> Result<Trajectory, SchemeError> {
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(SchemeError::Config(format!("final time must be finite and non-negative, got {t_end}")));
    }
    if let Some((i, j)) = u0.first_non_finite() {
        return Err(SchemeError::State(format!("initial component {i} of cell {j} is not finite")));
    }
    if output_times.windows(2).any(|w| w[1] < w[0]) || output_times.iter().any(|&t| !(0.0..=t_end).contains(&t)) {
        return Err(SchemeError::Config("output times must be sorted and lie in [0, T]".into()));
    }
    let sup0 = u0.max_radius();
    let model = if 1.05 * sup0 > model.r_max() { model.with_r_max(1.05 * sup0)? } else { model.clone() };

    let mut state = SchemeState::initial(scheme, u0);
    let mut weak_bv = 0.0;
    let mut diagnostics = vec![measure(&state, 0, 0.0, 0.0, dx, weak_bv, None)];
    let mut snapshots = Vec::new();
    let mut pending = output_times.iter().copied().peekable();
    while pending.peek() == Some(&0.0) {
        pending.next();
        snapshots.push(snapshot(&state, 0.0));
    }

    let mut t = 0.0;
    let mut step = 0;
    while t < t_end {
        let next_stop = pending.peek().copied().unwrap_or(t_end);
        let mut dt = compute_dt_for_radius(&model, state.sup_radius(), dx, cfl)?;
        let t_new = if t + dt >= next_stop - 1e-12 * next_stop.abs().max(1.0) {
            dt = next_stop - t;
            next_stop
        } else {
            t + dt
        };
        weak_bv += dt * difference_energy(&state.u(), bc);
        let (next, warning) = state.step(scheme, &model, dt, dx, bc)?;
        step += 1;
        if !next.is_finite() {
            return Err(SchemeError::NonFinite { step });
        }
        state = next;
        t = t_new;
        diagnostics.push(measure(&state, step, t, dt, dx, weak_bv, warning));
        while pending.peek() == Some(&t) {
            pending.next();
            snapshots.push(snapshot(&state, t));
        }
    }

    Ok(Trajectory { scheme, dx, snapshots, diagnostics, final_state: state, final_time: t })
}

/// `Σ_j |u_j - u_{j-1}|²` including the ghost interface.
fn difference_energy(u: &VectorField, bc: BoundaryPolicy) -> f64 {
    let cells = u.num_cells();
    (0..cells)
        .map(|j| {
            let l = bc.left(j, cells);
            u.cell(j).iter().zip(u.cell(l)).map(|(a, b)| (a - b) * (a - b)).sum::<f64>()
        })
        .sum()
}

fn measure(
    state: &SchemeState,
    step: usize,
    time: f64,
    dt: f64,
    dx: f64,
    weak_bv_accum: f64,
    stability_warning: Option<StabilityWarning>,
) -> StepDiagnostics {
    let u = state.u();
    let r = state.radius();
    StepDiagnostics {
        step,
        time,
        dt,
        l2_norm: u.l2_norm(dx),
        linf_radius: r.iter().copied().fold(0.0, f64::max),
        tv_radius: scalar_total_variation(&r),
        weak_bv_accum,
        mass: u.mass(dx),
        stability_warning,
    }
}

fn snapshot(state: &SchemeState, time: f64) -> Snapshot {
    Snapshot { time, u: state.u(), r: state.radius() }
}
