//! Continuous model, discrete fields and grid, and the geometric
//! diagnostics shared by every scheme.

mod cone;
mod entropy;
mod field;
mod grid;
mod phi;

pub use cone::{cone_membership, tau, tau_speeds, ConeReport, ConeSpec};
pub use entropy::{EntropyKind, EntropyPairConfig};
pub use field::{dot, norm, scalar_total_variation, VectorField};
pub use grid::Grid1D;
pub use phi::{validate_phi, Assumption, CustomPhi, Nonlinearity, PhiModel, ScalarFn, ValidationReport, Violation};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("radius {r} outside the model domain [0, {r_max}]")]
    Domain { r: f64, r_max: f64 },
    #[error("phi evaluated to {value} at r = {r}")]
    Evaluation { r: f64, value: f64 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("non-finite value in component {component} of cell {cell}")]
    NonFinite { component: usize, cell: usize },
    #[error("cell {cell} has (u, e) = {projection}; the direction field is undefined outside the cone")]
    Degenerate { cell: usize, projection: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
