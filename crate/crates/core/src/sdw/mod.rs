//! Pressureless gas dynamics: single delta-shock Riemann solutions, the
//! interaction of two delta shocks, and a weak-form residual check.

mod interaction;
mod oracle;
mod pgd;

pub use interaction::{
    asymptotic_roots, build_interaction_ivp, integrate_sdw, Jumps, PathSample, SdwIvp, SdwPath, Trend,
};
pub use oracle::{weak_residual_oracle, DeltaPoint, Slice, WeakBox, WeakSolution};
pub use pgd::{delta_speed_from_jumps, solve_pgd_riemann, PgdRiemannSolution};
