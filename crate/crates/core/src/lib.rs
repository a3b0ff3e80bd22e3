//! Wave front tracking for one-dimensional isentropic gas dynamics with a
//! vanishing pressure `p = kappa^2 rho^gamma`, `gamma = 1 + 2 eps`, and exact
//! delta-shock (shadow wave) solutions of the pressureless limit.
//!
//! * [`euler`]: invariants, wave curves and the exact Riemann solver.
//! * [`estimates`]: evaluable interaction estimates and the empirical
//!   interaction constant.
//! * [`tracking`]: event-driven front tracking with a Glimm-type monitor.
//! * [`sdw`]: delta-shock Riemann solutions, the two-wave interaction ODE
//!   and a weak-form residual check.
//! * [`harness`]: the reference experiments: table sweeps and the
//!   vanishing-pressure comparison.

pub mod error;
pub mod estimates;
pub mod euler;
pub mod harness;
pub mod ode;
pub mod roots;
pub mod sdw;
pub mod tracking;

pub use error::{Error, Result};
