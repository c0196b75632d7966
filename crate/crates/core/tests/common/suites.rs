#![allow(dead_code)]

//! Randomized stability, conservation and equivalence suites. Each returns
//! a short summary on success and the first violation otherwise.

use kk_core::model::{cone_membership, scalar_total_variation, ConeSpec, PhiModel, VectorField};
use kk_core::schemes::{
    advance_from, compute_dt, compute_dt_for_radius, entropy_residual, forward_euler, polar_join, polar_split,
    scalar_upwind_step, semi_discrete_rhs, step_coupled, step_split_conservative, step_split_polar, BoundaryPolicy,
    CflPolicy, SchemeKind,
};
use rand::Rng;

use super::{inf, random_blocky_field, random_blocky_field_in, random_field, random_unit, rng, scaled, sup};

pub const RUNS: usize = 100;
const CELLS: usize = 64;
const STEPS: usize = 40;

pub type SuiteResult = Result<String, String>;

fn practical() -> CflPolicy {
    CflPolicy::practical(0.75).unwrap()
}

/// Model with room for the data; the exponent varies with the run.
fn model_for(run: usize, sup_r: f64) -> PhiModel {
    let p = [2.0, 1.0, 1.5, 3.0][run % 4];
    PhiModel::power(p, (1.05 * sup_r).max(1.0)).unwrap()
}

fn bc_for(run: usize) -> BoundaryPolicy {
    if run % 2 == 0 {
        BoundaryPolicy::ZeroGradient
    } else {
        BoundaryPolicy::Periodic
    }
}

/// Random initial field for run `run`: compactly supported under
/// zero-gradient boundaries, arbitrary under periodic ones.
fn field_for(rng: &mut rand_chacha::ChaCha8Rng, run: usize, n: usize) -> VectorField {
    let pad = if bc_for(run) == BoundaryPolicy::ZeroGradient { 4 } else { 0 };
    if run % 3 == 0 {
        random_field(rng, n, CELLS, 0.0, 2.0, pad)
    } else {
        random_blocky_field(rng, n, CELLS, 2.0, pad)
    }
}

/// Scheme 1: `sup_j r` and `‖u‖_{L²}` never increase.
pub fn coupled_max_principle_and_l2(seed: u64) -> SuiteResult {
    let mut rng = rng(seed);
    let dx = 0.05;
    let mut worst_sup: f64 = f64::NEG_INFINITY;
    let mut worst_l2: f64 = f64::NEG_INFINITY;
    for run in 0..RUNS {
        let n = 2 + run % 2;
        let mut u = field_for(&mut rng, run, n);
        let model = model_for(run, u.max_radius());
        let bc = bc_for(run);
        for step in 0..STEPS {
            let dt = compute_dt(&model, &u, dx, &practical()).map_err(|e| e.to_string())?;
            let (next, warning) = step_coupled(&model, &u, dt, dx, bc);
            let (s0, s1) = (u.max_radius(), next.max_radius());
            let (l0, l1) = (u.l2_norm(dx), next.l2_norm(dx));
            worst_sup = worst_sup.max(s1 - s0);
            worst_l2 = worst_l2.max(l1 - l0);
            if s1 > s0 + 1e-12 || warning.is_some() {
                return Err(format!("run {run} step {step}: sup r grew from {s0} to {s1}"));
            }
            if l1 > l0 + 1e-12 {
                return Err(format!("run {run} step {step}: L2 norm grew from {l0} to {l1}"));
            }
            u = next;
        }
    }
    Ok(format!("max sup-r increment {worst_sup:.2e}, max L2 increment {worst_l2:.2e}"))
}

fn random_radius(rng: &mut rand_chacha::ChaCha8Rng, run: usize) -> Vec<f64> {
    let n = 1 + run % 3;
    field_for(rng, run, n).radii()
}

/// Scalar scheme: `Δx Σ|r|`, `Σ|Δr|` and `Σ|r^{n+1} - r^n|` are
/// non-increasing in `n`.
pub fn scalar_l1_tv_time_tv(seed: u64) -> SuiteResult {
    let mut rng = rng(seed);
    let dx = 0.05;
    for run in 0..RUNS {
        let mut r = random_radius(&mut rng, run);
        let model = model_for(run, sup(&r));
        let bc = bc_for(run);
        let tv = |r: &[f64]| match bc {
            BoundaryPolicy::Periodic => scalar_total_variation(r) + (r[0] - r[r.len() - 1]).abs(),
            BoundaryPolicy::ZeroGradient => scalar_total_variation(r),
        };
        let mut prev_time_tv = f64::INFINITY;
        for step in 0..STEPS {
            let dt = compute_dt_for_radius(&model, sup(&r), dx, &practical()).map_err(|e| e.to_string())?;
            let next = scalar_upwind_step(&model, &r, dt, dx, bc);
            let l1 = |v: &[f64]| dx * v.iter().map(|x| x.abs()).sum::<f64>();
            let scale = 1e-12 * (1.0 + tv(&r) + l1(&r));
            if l1(&next) > l1(&r) + scale {
                return Err(format!("run {run} step {step}: L1 grew {} -> {}", l1(&r), l1(&next)));
            }
            if tv(&next) > tv(&r) + scale {
                return Err(format!("run {run} step {step}: TV grew {} -> {}", tv(&r), tv(&next)));
            }
            // time variation per unit time, so that a shorter step is comparable
            let time_tv: f64 = next.iter().zip(&r).map(|(a, b)| (a - b).abs()).sum::<f64>() / dt;
            if time_tv > prev_time_tv * (1.0 + 1e-12) + 1e-12 {
                return Err(format!("run {run} step {step}: time variation grew {prev_time_tv} -> {time_tv}"));
            }
            prev_time_tv = time_tv;
            r = next;
        }
    }
    Ok(format!("{RUNS} runs x {STEPS} steps"))
}

/// `r⁰ ≤ r̃⁰` implies `r^n ≤ r̃^n`.
pub fn scalar_monotonicity(seed: u64) -> SuiteResult {
    let mut rng = rng(seed);
    let dx = 0.05;
    for run in 0..RUNS {
        let lower = random_radius(&mut rng, run);
        let upper: Vec<f64> = lower.iter().map(|&v| v + rng.gen_range(0.0..0.5)).collect();
        let model = model_for(run, sup(&upper));
        let bc = bc_for(run);
        let (mut a, mut b) = (lower, upper);
        for step in 0..STEPS {
            let dt = compute_dt_for_radius(&model, sup(&b), dx, &practical()).map_err(|e| e.to_string())?;
            a = scalar_upwind_step(&model, &a, dt, dx, bc);
            b = scalar_upwind_step(&model, &b, dt, dx, bc);
            if let Some(j) = (0..a.len()).find(|&j| a[j] > b[j] + 1e-12) {
                return Err(format!("run {run} step {step} cell {j}: order lost, {} > {}", a[j], b[j]));
            }
        }
    }
    Ok(format!("{RUNS} ordered pairs"))
}

/// Scheme 2: `|u_j| ≤ r_j ≤ sup|u⁰|` at every cell and step.
pub fn split_conservative_ordering(seed: u64) -> SuiteResult {
    let mut rng = rng(seed);
    let dx = 0.05;
    for run in 0..RUNS {
        let mut u = field_for(&mut rng, run, 2 + run % 2);
        let mut r = u.radii();
        let bound = u.max_radius();
        let model = model_for(run, bound);
        let bc = bc_for(run);
        for step in 0..STEPS {
            let dt = compute_dt_for_radius(&model, sup(&r), dx, &practical()).map_err(|e| e.to_string())?;
            let (r1, u1) = step_split_conservative(&model, &r, &u, dt, dx, bc).map_err(|e| e.to_string())?;
            for j in 0..r1.len() {
                let norm_u = u1.radius(j);
                if norm_u > r1[j] + 1e-10 || r1[j] > bound + 1e-10 {
                    return Err(format!(
                        "run {run} step {step} cell {j}: |u| = {norm_u}, r = {}, sup|u0| = {bound}",
                        r1[j]
                    ));
                }
            }
            r = r1;
            u = u1;
        }
    }
    Ok(format!("{RUNS} runs x {STEPS} steps"))
}

/// Scheme 3: componentwise bounds on `w`, per-component TV bound, time
/// continuity `Δx Σ|w^{n+1} - w^n| ≤ dt ‖φ‖_∞ TV(w^n)` and `|w| ≤ 1`.
pub fn split_polar_bounds(seed: u64) -> SuiteResult {
    let mut rng = rng(seed);
    let dx = 0.05;
    for run in 0..RUNS {
        let n = 2 + run % 2;
        let cells = 64;
        let mut r: Vec<f64> = (0..cells).map(|_| rng.gen_range(0.2..2.0)).collect();
        let mut w = if run % 2 == 0 {
            let dirs: Vec<Vec<f64>> = (0..cells).map(|_| random_unit(&mut rng, n)).collect();
            VectorField::from_cells(&dirs).unwrap()
        } else {
            // sub-unit directions: |w| ≤ 1 must persist, not just |w| = 1
            let dirs: Vec<Vec<f64>> =
                (0..cells).map(|_| scaled(random_unit(&mut rng, n), rng.gen_range(0.0..=1.0))).collect();
            VectorField::from_cells(&dirs).unwrap()
        };
        let model = model_for(run, sup(&r));
        let bc = bc_for(run);
        let lo: Vec<f64> = (0..n).map(|i| inf(&w.component(i))).collect();
        let hi: Vec<f64> = (0..n).map(|i| sup(&w.component(i))).collect();
        let tv0 = wrapped_tv(&w, bc);
        for step in 0..STEPS {
            let dt = compute_dt_for_radius(&model, sup(&r), dx, &practical()).map_err(|e| e.to_string())?;
            let phi_sup = r.iter().map(|&v| model.phi(v)).fold(0.0, f64::max);
            let tv_now: f64 = wrapped_tv(&w, bc).iter().sum();
            let (r1, w1) = step_split_polar(&model, &r, &w, dt, dx, bc).map_err(|e| e.to_string())?;
            for j in 0..cells {
                for i in 0..n {
                    let v = w1.get(i, j);
                    if v < lo[i] - 1e-14 || v > hi[i] + 1e-14 {
                        return Err(format!("run {run} step {step}: w{i} = {v} left [{}, {}]", lo[i], hi[i]));
                    }
                }
                if w1.radius(j) > 1.0 + 1e-14 {
                    return Err(format!("run {run} step {step} cell {j}: |w| = {}", w1.radius(j)));
                }
            }
            for (i, (now, first)) in wrapped_tv(&w1, bc).iter().zip(&tv0).enumerate() {
                if *now > first + 1e-12 {
                    return Err(format!("run {run} step {step}: TV(w{i}) grew {first} -> {now}"));
                }
            }
            let moved: f64 = dx * w1.as_flat().iter().zip(w.as_flat()).map(|(a, b)| (a - b).abs()).sum::<f64>();
            if moved > dt * phi_sup * tv_now * (1.0 + 1e-12) + 1e-15 {
                return Err(format!("run {run} step {step}: time variation {moved} exceeds {}", dt * phi_sup * tv_now));
            }
            r = r1;
            w = w1;
        }
    }
    Ok(format!("{RUNS} runs x {STEPS} steps"))
}

/// Per-component TV including the periodic wrap interface.
fn wrapped_tv(w: &VectorField, bc: BoundaryPolicy) -> Vec<f64> {
    let mut tv = w.total_variation();
    if bc == BoundaryPolicy::Periodic {
        let last = w.num_cells() - 1;
        for (i, t) in tv.iter_mut().enumerate() {
            *t += (w.get(i, 0) - w.get(i, last)).abs();
        }
    }
    tv
}

/// Kružkov residual of the scalar step is non-positive for 20 random `k`.
pub fn entropy_residuals(seed: u64) -> SuiteResult {
    let mut rng = rng(seed);
    let dx = 0.05;
    let mut worst = f64::NEG_INFINITY;
    for run in 0..RUNS {
        let r = random_radius(&mut rng, run);
        let top = sup(&r);
        let model = model_for(run, top);
        let bc = bc_for(run);
        let dt = compute_dt_for_radius(&model, top, dx, &practical()).map_err(|e| e.to_string())?;
        let next = scalar_upwind_step(&model, &r, dt, dx, bc);
        for _ in 0..20 {
            let k = rng.gen_range(0.0..=1.2 * top.max(0.1));
            let res = entropy_residual(&model, &r, &next, dt, dx, k, bc);
            let m = sup(&res);
            worst = worst.max(m);
            if m > 1e-12 {
                return Err(format!("run {run}, k = {k}: residual {m}"));
            }
        }
    }
    Ok(format!("max residual {worst:.2e}"))
}

/// Scheme 1 under the strict CFL policy:
/// `Σ_n Δt Δx Σ_j Δx |D₋u^n_j|² ≤ 2 ‖u⁰‖²_{L²}`.
///
/// The estimate needs `φ ≥ 1` wherever the data live, so nonzero cells
/// carry radii in `[1, 2]`.
pub fn weak_bv(seed: u64) -> SuiteResult {
    let mut rng = rng(seed);
    let dx = 0.05;
    let policy = CflPolicy::strict(0.75, None).unwrap();
    let mut worst_ratio: f64 = 0.0;
    for run in 0..RUNS {
        let bc = bc_for(run);
        let pad = if bc == BoundaryPolicy::ZeroGradient { 4 } else { 0 };
        let u0 = if run % 3 == 0 {
            random_field(&mut rng, 2 + run % 2, CELLS, 1.0, 2.0, pad)
        } else {
            random_blocky_field_in(&mut rng, 2 + run % 2, CELLS, 1.0, 2.0, pad)
        };
        let model = model_for(run, u0.max_radius());
        let traj =
            advance_from(SchemeKind::Coupled, &model, &u0, dx, &policy, bc, 1.0, &[]).map_err(|e| e.to_string())?;
        let accum = traj.diagnostics.last().unwrap().weak_bv_accum;
        let bound = 2.0 * u0.l2_norm(dx).powi(2);
        if bound > 0.0 {
            worst_ratio = worst_ratio.max(accum / bound);
        }
        if accum > bound * (1.0 + 1e-12) {
            return Err(format!("run {run}: accumulated {accum} exceeds {bound}"));
        }
    }
    Ok(format!("largest accumulated/bound ratio {worst_ratio:.3}"))
}

/// Per-component mass drift over 1000 periodic steps, relative to
/// `Δx Σ_j |u_j|`.
fn periodic_mass_drift(scheme: SchemeKind, u0: &VectorField, model: &PhiModel, dx: f64) -> Result<f64, String> {
    let bc = BoundaryPolicy::Periodic;
    let m0 = u0.mass(dx);
    let scale = dx * u0.cells().map(kk_core::model::norm).sum::<f64>();
    let mut u = u0.clone();
    let mut r = u0.radii();
    for _ in 0..1000 {
        let dt = compute_dt_for_radius(model, sup(&r), dx, &practical()).map_err(|e| e.to_string())?;
        match scheme {
            SchemeKind::Coupled => {
                u = step_coupled(model, &u, dt, dx, bc).0;
                r = u.radii();
            }
            SchemeKind::SplitConservative => {
                let (r1, u1) = step_split_conservative(model, &r, &u, dt, dx, bc).map_err(|e| e.to_string())?;
                r = r1;
                u = u1;
            }
            other => return Err(format!("{other} is not conservative")),
        }
    }
    Ok(u.mass(dx).iter().zip(&m0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) / scale)
}

pub fn periodic_conservation(seed: u64) -> SuiteResult {
    let mut rng = rng(seed);
    let dx = 0.05;
    let mut worst: f64 = 0.0;
    for run in 0..10 {
        let u0 = random_blocky_field(&mut rng, 2 + run % 2, CELLS, 2.0, 0);
        if u0.max_radius() == 0.0 {
            continue;
        }
        let model = model_for(run, u0.max_radius());
        for scheme in [SchemeKind::Coupled, SchemeKind::SplitConservative] {
            let drift = periodic_mass_drift(scheme, &u0, &model, dx)?;
            worst = worst.max(drift);
            if drift > 1e-12 {
                return Err(format!("run {run}, {scheme}: relative mass drift {drift:e}"));
            }
        }
    }
    Ok(format!("max relative drift {worst:.2e} over 1000 steps"))
}

/// Mass change of one polar-split step, reconstructed through `u = r w`.
fn polar_step_drift(model: &PhiModel, u0: &VectorField, dt: f64, dx: f64) -> Result<f64, String> {
    let (r, w) = polar_split(u0);
    let (r1, w1) = step_split_polar(model, &r, &w, dt, dx, BoundaryPolicy::Periodic).map_err(|e| e.to_string())?;
    let m0 = u0.mass(dx);
    let m1 = polar_join(&r1, &w1).mass(dx);
    Ok(m1.iter().zip(&m0).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())
}

/// Scheme 3 is not conservative; its per-step mass drift is `O(dt)` on a
/// fixed grid, so halving `dt` must roughly halve it.
pub fn polar_drift_halving() -> SuiteResult {
    let cells = 200;
    let dx = 1.0 / cells as f64;
    let cells_data: Vec<Vec<f64>> = (0..cells)
        .map(|j| {
            let x = (j as f64 + 0.5) * dx;
            let r = 1.0 + 0.5 * (2.0 * std::f64::consts::PI * x).sin();
            let a = 2.0 * std::f64::consts::PI * x;
            vec![r * a.cos(), r * a.sin()]
        })
        .collect();
    let u0 = VectorField::from_cells(&cells_data).unwrap();
    let model = PhiModel::quadratic(2.0).unwrap();
    let dt0 = compute_dt(&model, &u0, dx, &practical()).map_err(|e| e.to_string())?;
    let drifts: Vec<f64> =
        (0..4).map(|k| polar_step_drift(&model, &u0, dt0 / f64::powi(2.0, k), dx)).collect::<Result<_, _>>()?;
    let ratios: Vec<f64> = drifts.windows(2).map(|p| p[0] / p[1]).collect();
    if drifts[0] <= 0.0 || ratios.iter().any(|q| !(1.8..=2.2).contains(q)) {
        return Err(format!("drifts {drifts:?}, halving ratios {ratios:?}"));
    }
    Ok(format!("halving ratios {}", ratios.iter().map(|q| format!("{q:.3}")).collect::<Vec<_>>().join(", ")))
}

/// Forward Euler over the semi-discrete right-hand side equals the coupled
/// step bit for bit.
pub fn bitwise_equivalence(seed: u64) -> SuiteResult {
    let mut rng = rng(seed);
    for run in 0..RUNS {
        let u = field_for(&mut rng, run, 1 + run % 4);
        let model = model_for(run, u.max_radius());
        let bc = bc_for(run);
        let dx = rng.gen_range(0.001..0.5);
        let dt = compute_dt(&model, &u, dx, &practical()).map_err(|e| e.to_string())?;
        let a = step_coupled(&model, &u, dt, dx, bc).0;
        let b = forward_euler(&u, &semi_discrete_rhs(&model, &u, dx, bc), dt);
        let same = a.as_flat().iter().zip(b.as_flat()).all(|(x, y)| x.to_bits() == y.to_bits());
        if !same || a.as_flat().len() != b.as_flat().len() {
            return Err(format!("run {run}: results differ"));
        }
    }
    Ok(format!("{RUNS} states identical"))
}

/// Forward Euler on the semi-discrete flow keeps data inside `Γ_δ`, up to
/// `10 dt` of slack in `δ`, over unit time.
pub fn cone_invariance(seed: u64) -> SuiteResult {
    let mut rng = rng(seed);
    let delta = 0.9;
    let cone = ConeSpec::diagonal(2, delta).unwrap();
    let half = delta.acos();
    let cells = 24;
    let dx = 1.0 / cells as f64;
    for run in 0..5 {
        let data: Vec<Vec<f64>> = (0..cells)
            .map(|_| {
                let a = std::f64::consts::FRAC_PI_4 + rng.gen_range(-1.0..=1.0) * half * 0.999;
                let r = rng.gen_range(0.1..1.5);
                vec![r * a.cos(), r * a.sin()]
            })
            .collect();
        let mut u = VectorField::from_cells(&data).unwrap();
        let model = PhiModel::quadratic(1.6).unwrap();
        let dt = dx * 1e-3 / model.max_wave_speed(u.max_radius()).unwrap();
        let relaxed = ConeSpec::diagonal(2, delta - 10.0 * dt).unwrap();
        let steps = (1.0 / dt).ceil() as usize;
        let bc = bc_for(run);
        for step in 0..steps {
            u = forward_euler(&u, &semi_discrete_rhs(&model, &u, dx, bc), dt);
            if step % 1000 == 0 || step + 1 == steps {
                let report = cone_membership(&u, &relaxed).map_err(|e| e.to_string())?;
                if !report.all_members() {
                    return Err(format!("run {run} step {step}: left the cone, margin {}", report.margin));
                }
            }
        }
        if !cone_membership(&u, &cone).map_err(|e| e.to_string())?.all_members() {
            return Err(format!("run {run}: final state left the original cone"));
        }
    }
    Ok("5 runs over unit time".into())
}
