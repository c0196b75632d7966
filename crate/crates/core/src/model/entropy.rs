//! Entropy/entropy-flux pairs for the scalar radius law `r_t + f(r)_x = 0`.

use super::{ModelError, Nonlinearity, PhiModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntropyKind {
    /// `(|s - k|, sgn(s - k)(f(s) - f(k)))`
    KruzkovAbs,
    /// `(f(s) - f(k), ∫_k^s f'(θ)² dθ)`
    SquareFlux,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyPairConfig {
    k: f64,
    kind: EntropyKind,
}

const QUADRATURE_PANELS: usize = 256;

impl EntropyPairConfig {
    pub fn new(k: f64, kind: EntropyKind) -> Result<Self, ModelError> {
        if !k.is_finite() {
            return Err(ModelError::InvalidParameter(format!("entropy constant must be finite, got {k}")));
        }
        Ok(Self { k, kind })
    }

    pub fn kruzkov(k: f64) -> Result<Self, ModelError> {
        Self::new(k, EntropyKind::KruzkovAbs)
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn kind(&self) -> EntropyKind {
        self.kind
    }

    /// `(η(s), q(s))`.
    pub fn eval(&self, model: &PhiModel, s: f64) -> (f64, f64) {
        let k = self.k;
        let fs = model.flux_unchecked(s);
        let fk = model.flux_unchecked(k);
        match self.kind {
            EntropyKind::KruzkovAbs => {
                let sign = if s > k {
                    1.0
                } else if s < k {
                    -1.0
                } else {
                    0.0
                };
                ((s - k).abs(), sign * (fs - fk))
            }
            EntropyKind::SquareFlux => (fs - fk, integral_of_squared_speed(model, k, s)),
        }
    }
}

/// `∫_a^b f'(θ)² dθ`; closed form for power laws, composite Simpson otherwise.
fn integral_of_squared_speed(model: &PhiModel, a: f64, b: f64) -> f64 {
    match model.kind() {
        Nonlinearity::Power { exponent } => {
            let p = *exponent;
            let m = 2.0 * p + 1.0;
            (1.0 + p).powi(2) * (b.powf(m) - a.powf(m)) / m
        }
        Nonlinearity::Custom(_) => {
            let g = |x: f64| model.flux_derivative(x).powi(2);
            let h = (b - a) / QUADRATURE_PANELS as f64;
            let mut sum = g(a) + g(b);
            for i in 1..QUADRATURE_PANELS {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                sum += w * g(a + i as f64 * h);
            }
            sum * h / 3.0
        }
    }
}
