use serde::Serialize;

use crate::error::{Error, Result};
use crate::euler::State;

/// Solution of a Riemann problem for pressureless gas dynamics, centred at
/// `(x, t) = (0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum PgdRiemannSolution {
    Trivial { state: State },
    /// Single shadow wave moving at `speed` with mass `strength_rate * t`.
    DeltaShock { left: State, right: State, speed: f64, strength_rate: f64 },
    /// Two contact discontinuities `x = u0 t`, `x = u1 t` with vacuum between;
    /// inside the fan `u = x / t`.
    VacuumFan { left: State, right: State },
}

impl PgdRiemannSolution {
    pub fn speed(&self) -> Option<f64> {
        match self {
            PgdRiemannSolution::DeltaShock { speed, .. } => Some(*speed),
            _ => None,
        }
    }

    pub fn strength_rate(&self) -> Option<f64> {
        match self {
            PgdRiemannSolution::DeltaShock { strength_rate, .. } => Some(*strength_rate),
            _ => None,
        }
    }
}

fn require(st: &State, what: &str) -> Result<()> {
    if st.rho > 0.0 && st.rho.is_finite() && st.u.is_finite() {
        Ok(())
    } else {
        Err(Error::Vacuum(format!("{what} has density {}", st.rho)))
    }
}

/// Delta-shock speed as the density-weighted mean
/// `(sqrt(rho0) u0 + sqrt(rho1) u1) / (sqrt(rho0) + sqrt(rho1))`.
///
/// Algebraically equal to `([rho u] - [u] sqrt(rho0 rho1)) / [rho]` but
/// free of the removable singularity at `rho0 = rho1`.
pub(crate) fn delta_speed(left: &State, right: &State) -> f64 {
    let (a, b) = (left.rho.sqrt(), right.rho.sqrt());
    (a * left.u + b * right.u) / (a + b)
}

/// The jump-quotient form of the speed; `None` when `[rho] = 0`.
pub fn delta_speed_from_jumps(left: &State, right: &State) -> Option<f64> {
    let dr = right.rho - left.rho;
    if dr == 0.0 {
        return None;
    }
    let dm = right.momentum() - left.momentum();
    let du = right.u - left.u;
    Some((dm - du * (left.rho * right.rho).sqrt()) / dr)
}

pub fn solve_pgd_riemann(left: &State, right: &State) -> Result<PgdRiemannSolution> {
    require(left, "left state")?;
    require(right, "right state")?;
    if left == right {
        return Ok(PgdRiemannSolution::Trivial { state: *left });
    }
    if left.u > right.u {
        Ok(PgdRiemannSolution::DeltaShock {
            left: *left,
            right: *right,
            speed: delta_speed(left, right),
            strength_rate: (left.u - right.u) * (left.rho * right.rho).sqrt(),
        })
    } else {
        Ok(PgdRiemannSolution::VacuumFan { left: *left, right: *right })
    }
}
