//! Exact Riemann solver for the perturbed isentropic system.

use serde::Serialize;

use super::curves::{log_ratio, velocity_jump, Family, WaveKind};
use super::params::{eigenvalues, to_invariants, GasParams, State, VACUUM_RHO};
use crate::error::{Error, Result};
use crate::roots::{self, RootOptions};

/// Waves whose invariant amplitude is below this are not created.
pub const ZERO_AMPLITUDE: f64 = 1e-12;

/// A single elementary wave of a Riemann solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Wave {
    pub family: Family,
    pub kind: WaveKind,
    /// Signed jump of the invariant that changes across this family
    /// (`r` for 1-waves, `s` for 2-waves): negative for shocks.
    pub amplitude: f64,
    pub left: State,
    pub right: State,
    pub speed_lo: f64,
    pub speed_hi: f64,
}

impl Wave {
    pub fn strength(&self) -> f64 {
        self.amplitude.abs()
    }

    pub fn is_shock(&self) -> bool {
        self.kind == WaveKind::Shock
    }
}

/// Which elementary waves a Riemann solution is made of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WavePattern {
    pub first: Option<WaveKind>,
    pub second: Option<WaveKind>,
}

impl WavePattern {
    pub fn is_trivial(&self) -> bool {
        self.first.is_none() && self.second.is_none()
    }

    /// Short label such as `S1S2`, `R1`, or `-` for the trivial solution.
    pub fn label(&self) -> String {
        let tag = |k: Option<WaveKind>, fam: char| match k {
            Some(WaveKind::Shock) => format!("S{fam}"),
            Some(WaveKind::Rarefaction) => format!("R{fam}"),
            None => String::new(),
        };
        let s = format!("{}{}", tag(self.first, '1'), tag(self.second, '2'));
        if s.is_empty() {
            "-".to_string()
        } else {
            s
        }
    }
}

impl std::fmt::Display for WavePattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RiemannSolution {
    pub left: State,
    pub right: State,
    pub middle: State,
    pub pattern: WavePattern,
    pub wave1: Option<Wave>,
    pub wave2: Option<Wave>,
}

impl RiemannSolution {
    pub fn waves(&self) -> impl Iterator<Item = &Wave> {
        self.wave1.iter().chain(self.wave2.iter())
    }
}

/// How the root finder for the middle density is bracketed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BracketStrategy {
    /// Grow/shrink by factors of two from `max(rho_left, rho_right)` and
    /// refine with secant steps. The production path.
    #[default]
    Doubling,
    /// Fixed bracket `[1e-12, 1e12]`, bisection in `ln rho`. Independent
    /// cross-check.
    WideLogBisection,
}

pub fn solve_riemann(left: &State, right: &State, p: &GasParams) -> Result<RiemannSolution> {
    solve_riemann_with(left, right, p, BracketStrategy::Doubling)
}

pub fn solve_riemann_with(
    left: &State,
    right: &State,
    p: &GasParams,
    strategy: BracketStrategy,
) -> Result<RiemannSolution> {
    left.require_positive("left state")?;
    right.require_positive("right state")?;
    if left == right {
        return Ok(RiemannSolution {
            left: *left,
            right: *right,
            middle: *left,
            pattern: WavePattern { first: None, second: None },
            wave1: None,
            wave2: None,
        });
    }

    let il = to_invariants(left, p)?;
    let ir = to_invariants(right, p)?;
    let deficit = il.s - ir.r + 2.0 / p.sqrt_eps();
    if deficit <= 0.0 {
        return Err(Error::VacuumFormation { deficit });
    }

    // u on the forward 1-curve of `left` minus u on the backward 2-curve of
    // `right`; strictly decreasing in rho
    let du = left.u - right.u;
    let mismatch = |rho: f64| du - velocity_jump(rho, left.rho, p) - velocity_jump(rho, right.rho, p);

    let rho_m = match strategy {
        BracketStrategy::Doubling => {
            let start = left.rho.max(right.rho);
            let (lo, hi) = if mismatch(start) >= 0.0 {
                let mut hi = 2.0 * start;
                let mut k = 0;
                while mismatch(hi) > 0.0 {
                    hi *= 2.0;
                    k += 1;
                    if k > 2000 || !hi.is_finite() {
                        return Err(Error::numerics("no sign change while doubling", start, hi));
                    }
                }
                (0.5 * hi, hi)
            } else {
                let mut lo = 0.5 * start;
                while mismatch(lo) < 0.0 {
                    lo *= 0.5;
                    if lo < VACUUM_RHO {
                        return Err(Error::VacuumFormation { deficit: mismatch(VACUUM_RHO) });
                    }
                }
                (lo, 2.0 * lo)
            };
            roots::bracketed(mismatch, lo, hi, RootOptions::default())?
        }
        BracketStrategy::WideLogBisection => {
            if mismatch(VACUUM_RHO) < 0.0 {
                return Err(Error::VacuumFormation { deficit: mismatch(VACUUM_RHO) });
            }
            roots::log_bisection(mismatch, VACUUM_RHO, 1e12, 400)?
        }
    };
    let middle = State::new(rho_m, left.u - velocity_jump(rho_m, left.rho, p));
    assemble(left, right, &middle, p)
}

fn assemble(left: &State, right: &State, middle: &State, p: &GasParams) -> Result<RiemannSolution> {
    let il = to_invariants(left, p)?;
    let im = to_invariants(middle, p)?;
    let ir = to_invariants(right, p)?;

    let beta = im.r - il.r;
    let chi = ir.s - im.s;

    let wave1 = if beta.abs() < ZERO_AMPLITUDE {
        None
    } else {
        Some(build_wave(Family::One, beta, left, middle, p)?)
    };
    let wave2 = if chi.abs() < ZERO_AMPLITUDE {
        None
    } else {
        Some(build_wave(Family::Two, chi, middle, right, p)?)
    };
    Ok(RiemannSolution {
        left: *left,
        right: *right,
        middle: *middle,
        pattern: WavePattern { first: wave1.map(|w| w.kind), second: wave2.map(|w| w.kind) },
        wave1,
        wave2,
    })
}

fn build_wave(family: Family, amplitude: f64, left: &State, right: &State, p: &GasParams) -> Result<Wave> {
    let (kind, lo, hi) = if amplitude < 0.0 {
        let c = shock_speed_closed(left, right, family, p);
        (WaveKind::Shock, c, c)
    } else {
        let pick = |s: &State| -> Result<f64> {
            let (l1, l2) = eigenvalues(s, p)?;
            Ok(if family == Family::One { l1 } else { l2 })
        };
        (WaveKind::Rarefaction, pick(left)?, pick(right)?)
    };
    Ok(Wave { family, kind, amplitude, left: *left, right: *right, speed_lo: lo, speed_hi: hi })
}

/// Shock speed from the mass flux `j^2 = rho_l rho_r [p] / [rho]`; well
/// conditioned for weak shocks, unlike the plain quotient `[rho u]/[rho]`.
pub(crate) fn shock_speed_closed(left: &State, right: &State, family: Family, p: &GasParams) -> f64 {
    let (d, ln_a) = log_ratio(right.rho, left.rho);
    // (alpha^gamma - 1) / (alpha - 1)
    let ratio = if d == 0.0 { p.gamma() } else { (p.gamma() * ln_a).exp_m1() / d };
    let k = p.kappa();
    let dp_drho = k * k * left.rho.powf(p.gamma() - 1.0) * ratio;
    let rel = (right.rho / left.rho * dp_drho).sqrt();
    match family {
        Family::One => left.u - rel,
        Family::Two => left.u + rel,
    }
}

/// Scaled Rankine-Hugoniot residuals `([m] - c[rho], [m u + p] - c[m])`.
pub fn rh_residuals(left: &State, right: &State, speed: f64, p: &GasParams) -> (f64, f64) {
    let ql = left.conserved();
    let qr = right.conserved();
    let fl = left.flux(p);
    let fr = right.flux(p);
    let scale0 = fl[0].abs() + fr[0].abs() + speed.abs() * (ql[0].abs() + qr[0].abs()) + f64::MIN_POSITIVE;
    let scale1 = fl[1].abs() + fr[1].abs() + speed.abs() * (ql[1].abs() + qr[1].abs()) + f64::MIN_POSITIVE;
    (
        ((fr[0] - fl[0]) - speed * (qr[0] - ql[0])) / scale0,
        ((fr[1] - fl[1]) - speed * (qr[1] - ql[1])) / scale1,
    )
}

/// Rankine-Hugoniot speed of the discontinuity between `left` and `right`.
///
/// Both quotients `[rho u]/[rho]` and `[rho u^2 + p]/[rho u]` are formed
/// and must agree to `1e-8`; their mean is returned.
pub fn shock_speed(left: &State, right: &State, p: &GasParams) -> Result<f64> {
    let d_rho = right.rho - left.rho;
    if d_rho == 0.0 || d_rho.abs() <= f64::EPSILON * left.rho.max(right.rho) {
        return Err(Error::DegenerateJump(format!("density jump {d_rho:e} is zero")));
    }
    let fl = left.flux(p);
    let fr = right.flux(p);
    let d_m = fr[0] - fl[0];
    let c1 = d_m / d_rho;
    let (_, res) = rh_residuals(left, right, c1, p);
    let scale = d_m.abs() / (fl[0].abs() + fr[0].abs() + f64::MIN_POSITIVE);
    if scale > 1e-8 {
        let c2 = (fr[1] - fl[1]) / d_m;
        if (c1 - c2).abs() > 1e-8 * (1.0 + c1.abs()) {
            return Err(Error::NotAShock(format!("[m]/[rho] = {c1}, [mu+p]/[m] = {c2}")));
        }
        Ok(0.5 * (c1 + c2))
    } else if res.abs() > 1e-8 {
        Err(Error::NotAShock(format!("momentum residual {res:e} with [m] ~ 0")))
    } else {
        Ok(c1)
    }
}
