//! The scalar nonlinearity `φ` of the system `u_t + (u φ(|u|))_x = 0`.
//!
//! The radius `r = |u|` obeys the scalar law `r_t + f(r)_x = 0` with
//! `f(r) = r φ(r)`. The flux Jacobian has eigenvalue `φ(r) + r φ'(r)` once
//! (the genuinely nonlinear field) and `φ(r)` with multiplicity `n - 1`
//! (linearly degenerate contacts), so every wave speed is bounded by
//! `sup f'` when `φ' ≥ 0`.

use std::fmt;
use std::sync::Arc;

use super::ModelError;

/// Signature shared by `φ`, `φ'` and `φ''` of a custom model.
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Number of sample points used when a supremum must be found numerically.
const SUP_SAMPLES: usize = 1024;
/// Safety margin applied to sampled suprema of non-power models.
const SAMPLED_SUP_MARGIN: f64 = 1.05;

/// A user-supplied nonlinearity together with its first two derivatives.
#[derive(Clone)]
pub struct CustomPhi {
    pub name: String,
    pub phi: ScalarFn,
    pub dphi: ScalarFn,
    pub ddphi: ScalarFn,
}

impl fmt::Debug for CustomPhi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomPhi").field("name", &self.name).finish_non_exhaustive()
    }
}

#[derive(Clone, Debug)]
pub enum Nonlinearity {
    /// `φ(r) = r^p` with `p ≥ 1`.
    Power {
        exponent: f64,
    },
    Custom(CustomPhi),
}

/// `φ` with derivatives and the radius bound inside which it is evaluated.
#[derive(Clone, Debug)]
pub struct PhiModel {
    kind: Nonlinearity,
    r_max: f64,
}

impl PhiModel {
    /// Power law `φ(r) = r^p`.
    pub fn power(exponent: f64, r_max: f64) -> Result<Self, ModelError> {
        if !(exponent.is_finite() && exponent >= 1.0) {
            return Err(ModelError::InvalidParameter(format!(
                "power exponent must be finite and >= 1, got {exponent}"
            )));
        }
        Self::with_kind(Nonlinearity::Power { exponent }, r_max)
    }

    /// The model used throughout the numerical experiments: `φ(r) = r²`.
    pub fn quadratic(r_max: f64) -> Result<Self, ModelError> {
        Self::power(2.0, r_max)
    }

    pub fn custom<F, G, H>(name: &str, phi: F, dphi: G, ddphi: H, r_max: f64) -> Result<Self, ModelError>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
        H: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::with_kind(
            Nonlinearity::Custom(CustomPhi {
                name: name.to_string(),
                phi: Arc::new(phi),
                dphi: Arc::new(dphi),
                ddphi: Arc::new(ddphi),
            }),
            r_max,
        )
    }

    fn with_kind(kind: Nonlinearity, r_max: f64) -> Result<Self, ModelError> {
        if !(r_max.is_finite() && r_max > 0.0) {
            return Err(ModelError::InvalidParameter(format!("r_max must be finite and positive, got {r_max}")));
        }
        Ok(Self { kind, r_max })
    }

    /// Same nonlinearity, different validity bound.
    pub fn with_r_max(&self, r_max: f64) -> Result<Self, ModelError> {
        Self::with_kind(self.kind.clone(), r_max)
    }

    pub fn kind(&self) -> &Nonlinearity {
        &self.kind
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// The exponent when the model is a power law.
    pub fn power_exponent(&self) -> Option<f64> {
        match self.kind {
            Nonlinearity::Power { exponent } => Some(exponent),
            Nonlinearity::Custom(_) => None,
        }
    }

    pub fn is_quadratic(&self) -> bool {
        self.power_exponent() == Some(2.0)
    }

    /// `φ(r)`, unchecked against `r_max`.
    #[inline]
    pub fn phi(&self, r: f64) -> f64 {
        match &self.kind {
            Nonlinearity::Power { exponent } => pow(r, *exponent),
            Nonlinearity::Custom(c) => (c.phi)(r),
        }
    }

    #[inline]
    pub fn dphi(&self, r: f64) -> f64 {
        match &self.kind {
            Nonlinearity::Power { exponent } => exponent * pow(r, exponent - 1.0),
            Nonlinearity::Custom(c) => (c.dphi)(r),
        }
    }

    #[inline]
    pub fn ddphi(&self, r: f64) -> f64 {
        match &self.kind {
            Nonlinearity::Power { exponent } => {
                if *exponent == 1.0 {
                    0.0
                } else {
                    exponent * (exponent - 1.0) * pow(r, exponent - 2.0)
                }
            }
            Nonlinearity::Custom(c) => (c.ddphi)(r),
        }
    }

    /// `f(r) = r φ(r)`, unchecked.
    #[inline]
    pub fn flux_unchecked(&self, r: f64) -> f64 {
        r * self.phi(r)
    }

    /// `f'(r) = φ(r) + r φ'(r)`, the speed of the genuinely nonlinear field.
    #[inline]
    pub fn flux_derivative(&self, r: f64) -> f64 {
        self.phi(r) + r * self.dphi(r)
    }

    /// `f(r) = r φ(r)` for `r ∈ [0, r_max]`.
    pub fn flux(&self, r: f64) -> Result<f64, ModelError> {
        self.check_domain(r)?;
        Ok(self.flux_unchecked(r))
    }

    fn check_domain(&self, r: f64) -> Result<(), ModelError> {
        if r.is_nan() || r < 0.0 || r > self.r_max {
            return Err(ModelError::Domain { r, r_max: self.r_max });
        }
        Ok(())
    }

    /// Upper bound on `f'` over `[0, r_bound]`.
    ///
    /// Power laws are monotone, so the bound is the closed form
    /// `(1 + p) r_bound^p`. Other models are sampled densely and the
    /// sampled maximum is inflated by 5%.
    pub fn max_wave_speed(&self, r_bound: f64) -> Result<f64, ModelError> {
        if !(r_bound > 0.0) {
            return Err(ModelError::Domain { r: r_bound, r_max: self.r_max });
        }
        self.check_domain(r_bound)?;
        match self.kind {
            Nonlinearity::Power { exponent } => Ok((1.0 + exponent) * pow(r_bound, exponent)),
            Nonlinearity::Custom(_) => Ok(SAMPLED_SUP_MARGIN * sampled_sup(r_bound, |r| self.flux_derivative(r))),
        }
    }

    /// Upper bound on `φ'` over `[0, r_max]`.
    pub fn max_dphi(&self) -> f64 {
        match self.kind {
            Nonlinearity::Power { exponent } => exponent * pow(self.r_max, exponent - 1.0),
            Nonlinearity::Custom(_) => SAMPLED_SUP_MARGIN * sampled_sup(self.r_max, |r| self.dphi(r)),
        }
    }

    /// Upper bound on `φ` over `[0, r_bound]`.
    pub fn max_phi(&self, r_bound: f64) -> f64 {
        match self.kind {
            Nonlinearity::Power { exponent } => pow(r_bound, exponent),
            Nonlinearity::Custom(_) => SAMPLED_SUP_MARGIN * sampled_sup(r_bound, |r| self.phi(r)),
        }
    }
}

#[inline]
fn pow(r: f64, exponent: f64) -> f64 {
    if exponent.fract() == 0.0 && exponent.abs() <= i32::MAX as f64 {
        r.powi(exponent as i32)
    } else {
        r.powf(exponent)
    }
}

fn sampled_sup(r_bound: f64, g: impl Fn(f64) -> f64) -> f64 {
    (0..SUP_SAMPLES).map(|k| g(r_bound * k as f64 / (SUP_SAMPLES - 1) as f64)).fold(f64::NEG_INFINITY, f64::max)
}

/// One assumption that failed at a sampled radius.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub assumption: Assumption,
    pub r: f64,
    pub value: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assumption {
    /// `φ(0) = 0`
    VanishesAtZero,
    /// `φ(r) > 0` for `r > 0`
    Positive,
    /// `φ'(r) ≥ 0`
    NonDecreasing,
    /// `φ'` finite
    BoundedFirstDerivative,
    /// `φ''` finite
    BoundedSecondDerivative,
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Assumption::VanishesAtZero => "phi(0) = 0",
            Assumption::Positive => "phi(r) > 0",
            Assumption::NonDecreasing => "phi'(r) >= 0",
            Assumption::BoundedFirstDerivative => "phi'(r) finite",
            Assumption::BoundedSecondDerivative => "phi''(r) finite",
        };
        f.write_str(s)
    }
}

/// Result of [`validate_phi`]; empty means the sampled checks all passed.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub samples: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the structural assumptions on `φ` at `samples` radii spread
/// uniformly over `[0, r_max]`. Passing is evidence at the sampled
/// resolution only.
pub fn validate_phi(model: &PhiModel, samples: usize) -> Result<ValidationReport, ModelError> {
    if samples < 2 {
        return Err(ModelError::InvalidParameter(format!("validate_phi needs at least 2 samples, got {samples}")));
    }
    let mut violations = Vec::new();
    for k in 0..samples {
        let r = model.r_max * k as f64 / (samples - 1) as f64;
        let phi = model.phi(r);
        if !phi.is_finite() {
            return Err(ModelError::Evaluation { r, value: phi });
        }
        if k == 0 {
            if phi.abs() > 1e-12 {
                violations.push(Violation { assumption: Assumption::VanishesAtZero, r, value: phi });
            }
        } else if phi <= 0.0 {
            violations.push(Violation { assumption: Assumption::Positive, r, value: phi });
        }
        let dphi = model.dphi(r);
        if !dphi.is_finite() {
            violations.push(Violation { assumption: Assumption::BoundedFirstDerivative, r, value: dphi });
        } else if dphi < 0.0 {
            violations.push(Violation { assumption: Assumption::NonDecreasing, r, value: dphi });
        }
        let ddphi = model.ddphi(r);
        if !ddphi.is_finite() {
            violations.push(Violation { assumption: Assumption::BoundedSecondDerivative, r, value: ddphi });
        }
    }
    Ok(ValidationReport { samples, violations })
}
