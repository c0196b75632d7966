#![allow(dead_code)]

use kk_core::model::VectorField;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random field with cell radii in `[r_lo, r_hi]`. With `pad > 0` the first
/// and last `pad` cells are zero, giving compact support.
pub fn random_field(rng: &mut ChaCha8Rng, n: usize, cells: usize, r_lo: f64, r_hi: f64, pad: usize) -> VectorField {
    let mut data = vec![0.0; n * cells];
    for j in pad..cells.saturating_sub(pad) {
        let dir = random_unit(rng, n);
        let r = rng.gen_range(r_lo..=r_hi);
        for i in 0..n {
            data[j * n + i] = r * dir[i];
        }
    }
    VectorField::from_flat(n, data).unwrap()
}

/// Random piecewise-constant field: a few plateaus, which is closer to what
/// the solvers see than white noise.
pub fn random_blocky_field(rng: &mut ChaCha8Rng, n: usize, cells: usize, r_hi: f64, pad: usize) -> VectorField {
    random_blocky_field_in(rng, n, cells, 0.0, r_hi, pad)
}

pub fn random_blocky_field_in(
    rng: &mut ChaCha8Rng,
    n: usize,
    cells: usize,
    r_lo: f64,
    r_hi: f64,
    pad: usize,
) -> VectorField {
    let mut data = vec![0.0; n * cells];
    let mut current = scaled(random_unit(rng, n), rng.gen_range(r_lo..=r_hi));
    for j in pad..cells.saturating_sub(pad) {
        if rng.gen_bool(0.15) {
            current = scaled(random_unit(rng, n), rng.gen_range(r_lo..=r_hi));
        }
        data[j * n..(j + 1) * n].copy_from_slice(&current);
    }
    VectorField::from_flat(n, data).unwrap()
}

pub fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let len = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if len > 1e-3 {
            return v.into_iter().map(|x| x / len).collect();
        }
    }
}

pub fn scaled(v: Vec<f64>, s: f64) -> Vec<f64> {
    v.into_iter().map(|x| s * x).collect()
}

pub fn sup(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

pub fn inf(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::INFINITY, f64::min)
}
pub mod oracle;
pub mod suites;
