//! The standard experiment set-ups, all with `φ(r) = r²` on two components.

use crate::model::{Grid1D, PhiModel};
use crate::riemann::{DirectionProfile, Exp2Data, RiemannData};
use crate::schemes::{BoundaryPolicy, CflPolicy, SchemeKind};

use super::{HarnessError, InitRule, InitialData, RunConfig};

pub const PRESET_NAMES: [&str; 7] = ["exp1a", "exp1b", "exp2-1", "exp2-2", "exp2-3", "exp2-4", "table1"];

/// Cells used by the table preset when no refinement level is chosen (N = 10).
pub const TABLE1_DEFAULT_LEVEL: u32 = 10;

const CFL: f64 = 0.75;
const CELLS: usize = 4000;

pub fn preset(name: &str) -> Result<RunConfig, HarnessError> {
    match name {
        "exp1a" => riemann_preset([0.5, 1.5], [1.5, 2.0]),
        "exp1b" => riemann_preset([1.5, 2.0], [0.5, 1.5]),
        "exp2-1" => exp2_preset(1.0, 0.75, DirectionProfile::Rotation),
        "exp2-2" => exp2_preset(0.75, 1.0, DirectionProfile::Rotation),
        "exp2-3" => exp2_preset(1.0, 0.75, DirectionProfile::Flip),
        "exp2-4" => exp2_preset(0.75, 1.0, DirectionProfile::Flip),
        "table1" => {
            let data = RiemannData::new(vec![1.0, 1.0], vec![3.0, 1.0])?;
            build(
                SchemeKind::Coupled,
                Grid1D::new(-1.0, 39.0, 1 << TABLE1_DEFAULT_LEVEL)?,
                1.0,
                vec![0.0, 1.0],
                sup_radius(&data),
                InitialData::Riemann(data),
            )
        }
        other => Err(HarnessError::UnknownPreset { name: other.to_string(), valid: PRESET_NAMES.join(", ") }),
    }
}

fn sup_radius(data: &RiemannData) -> f64 {
    crate::model::norm(&data.u_left).max(crate::model::norm(&data.u_right))
}

fn riemann_preset(left: [f64; 2], right: [f64; 2]) -> Result<RunConfig, HarnessError> {
    let data = RiemannData::new(left.to_vec(), right.to_vec())?;
    build(
        SchemeKind::Coupled,
        Grid1D::new(-1.0, 20.0, CELLS)?,
        0.5,
        vec![0.0, 0.5],
        sup_radius(&data),
        InitialData::Riemann(data),
    )
}

fn exp2_preset(r_left: f64, r_right: f64, w0: DirectionProfile) -> Result<RunConfig, HarnessError> {
    let data = Exp2Data::new(r_left, r_right, w0)?;
    build(
        SchemeKind::SplitPolar,
        Grid1D::new(-1.0, 4.0, CELLS)?,
        0.75,
        vec![0.0, 0.25, 0.75],
        r_left.max(r_right),
        InitialData::Exp2(data),
    )
}

fn build(
    scheme: SchemeKind,
    grid: Grid1D,
    t_end: f64,
    output_times: Vec<f64>,
    sup_r: f64,
    initial: InitialData,
) -> Result<RunConfig, HarnessError> {
    Ok(RunConfig {
        scheme,
        model: PhiModel::quadratic(1.05 * sup_r)?,
        grid,
        cfl: CflPolicy::practical(CFL)?,
        bc: BoundaryPolicy::ZeroGradient,
        t_end,
        initial,
        init_rule: InitRule::Midpoint,
        output_times,
    })
}
