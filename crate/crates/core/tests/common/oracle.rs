#![allow(dead_code)]

//! Randomized self-consistency checks of the exact Riemann solution.

use kk_core::model::{norm, PhiModel};
use kk_core::riemann::{RadiusWave, RiemannData, SystemRiemannSolution};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{random_unit, rng, scaled};

pub type OracleResult = Result<String, String>;

/// Random states with `|U_l| > |U_r|` when `shock`, `|U_l| < |U_r|` otherwise.
pub fn random_case(rng: &mut ChaCha8Rng, n: usize, shock: bool) -> SystemRiemannSolution {
    let a = rng.gen_range(0.2..3.0);
    let b = rng.gen_range(0.2..3.0);
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let hi = if hi - lo < 1e-3 { lo + 0.1 } else { hi };
    let (rl, rr) = if shock { (hi, lo) } else { (lo, hi) };
    let data = RiemannData::new(scaled(random_unit(rng, n), rl), scaled(random_unit(rng, n), rr)).unwrap();
    SystemRiemannSolution::new(&PhiModel::quadratic(3.2).unwrap(), data).unwrap()
}

/// `|s(|U_r| - |U_m|) - (|U_r|³ - |U_m|³)|` with both radii read off the
/// solution on either side of the shock.
pub fn rankine_hugoniot(seed: u64) -> OracleResult {
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    for case in 0..100 {
        let sol = random_case(&mut rng, 2 + case % 2, true);
        let RadiusWave::Shock { speed } = sol.radius_wave() else {
            return Err(format!("case {case}: expected a shock"));
        };
        let behind = norm(&sol.eval(speed));
        let ahead = norm(&sol.eval(next_up(speed)));
        let residual = (speed * (ahead - behind) - (ahead.powi(3) - behind.powi(3))).abs();
        worst = worst.max(residual);
        if residual > 1e-12 {
            return Err(format!("case {case}: residual {residual:e} at s = {speed}"));
        }
    }
    Ok(format!("max residual {worst:.2e}"))
}

/// `Ū` is continuous across both fan edges.
pub fn fan_continuity(seed: u64) -> OracleResult {
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    for case in 0..100 {
        let sol = random_case(&mut rng, 2 + case % 2, false);
        let RadiusWave::Rarefaction { head, tail } = sol.radius_wave() else {
            return Err(format!("case {case}: expected a rarefaction"));
        };
        for edge in [head, tail] {
            let gap = distance(&sol.eval(edge), &sol.eval(next_up(edge)));
            worst = worst.max(gap);
            if gap > 1e-12 {
                return Err(format!("case {case}: jump {gap:e} at the fan edge {edge}"));
            }
        }
    }
    Ok(format!("max jump {worst:.2e}"))
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    norm(&a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>())
}

/// Smallest float above `x` (for positive finite `x`).
pub fn next_up(x: f64) -> f64 {
    f64::from_bits(x.to_bits() + 1)
}
