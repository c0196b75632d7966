use crate::model::{EntropyPairConfig, PhiModel};

use super::BoundaryPolicy;

/// Cell entropy residual of one scalar upwind step for a general pair:
/// `R_j = (η(r^{n+1}_j) - η(r^n_j))/dt + (q(r^n_j) - q(r^n_{j-1}))/dx`.
pub fn entropy_residual_with(
    model: &PhiModel,
    r_before: &[f64],
    r_after: &[f64],
    dt: f64,
    dx: f64,
    pair: &EntropyPairConfig,
    bc: BoundaryPolicy,
) -> Vec<f64> {
    let cells = r_before.len();
    assert_eq!(cells, r_after.len(), "entropy residual needs matching time levels");
    let before: Vec<(f64, f64)> = r_before.iter().map(|&r| pair.eval(model, r)).collect();
    (0..cells)
        .map(|j| {
            let l = bc.left(j, cells);
            let (eta_after, _) = pair.eval(model, r_after[j]);
            (eta_after - before[j].0) / dt + (before[j].1 - before[l].1) / dx
        })
        .collect()
}

/// Kružkov residual with `η = |r - k|`, `q = sgn(r - k)(f(r) - f(k))`.
/// Non-positive (to rounding) whenever `r_after` came from the monotone
/// upwind step under the CFL restriction.
pub fn entropy_residual(
    model: &PhiModel,
    r_before: &[f64],
    r_after: &[f64],
    dt: f64,
    dx: f64,
    k: f64,
    bc: BoundaryPolicy,
) -> Vec<f64> {
    let pair = EntropyPairConfig::kruzkov(k).expect("entropy constant must be finite");
    entropy_residual_with(model, r_before, r_after, dt, dx, &pair, bc)
}
