//! Upwind finite-difference solvers for the symmetric Keyfitz–Kranzer
//! system `u_t + (u φ(|u|))_x = 0`, `u ∈ ℝⁿ`.
//!
//! * [`model`]: `φ`, grids, discrete fields, the invariant cone.
//! * [`schemes`]: the coupled, conservative-split and polar-split steppers,
//!   the semi-discrete operator, CFL selection and the time loop.
//! * [`riemann`]: exact solutions for `φ(r) = r²`.
//! * [`harness`]: presets, error metric, refinement studies, CSV output.
//! * [`cli`]: the `kk` command-line front end.

pub mod cli;
pub mod harness;
pub mod model;
pub mod riemann;
pub mod schemes;
