//! Algebra of the pressure-perturbed system: parameters, invariants, wave
//! curves and the exact Riemann solver.

mod curves;
mod params;
mod riemann;

pub use curves::{shock_curve_invariants, wave_curve, Family, WaveKind};
pub use params::{eigenvalues, from_invariants, to_invariants, GasParams, Invariants, State, VACUUM_RHO};
pub use riemann::{
    rh_residuals, shock_speed, solve_riemann, solve_riemann_with, BracketStrategy, RiemannSolution, Wave,
    WavePattern, ZERO_AMPLITUDE,
};
