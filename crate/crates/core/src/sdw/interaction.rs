use std::io::Write;

use serde::Serialize;

use super::pgd::delta_speed;
use crate::error::{Error, Result};
use crate::euler::State;
use crate::ode::{self, OdeOptions};

/// Jumps `[x] = x2 - x0` across the outer states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Jumps {
    pub rho: f64,
    pub m: f64,
    pub mu2: f64,
}

impl Jumps {
    pub fn between(left: &State, right: &State) -> Self {
        Self {
            rho: right.rho - left.rho,
            m: right.momentum() - left.momentum(),
            mu2: right.momentum() * right.u - left.momentum() * left.u,
        }
    }
}

/// Initial-value problem for the shadow wave born from two interacting
/// delta shocks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SdwIvp {
    pub u0: State,
    pub u1: State,
    pub u2: State,
    pub a1: f64,
    pub a2: f64,
    /// Speeds and strength rates of the two incoming delta shocks.
    pub c1: f64,
    pub c2: f64,
    pub rate1: f64,
    pub rate2: f64,
    pub x: f64,
    pub t: f64,
    pub xi_t: f64,
    pub us_t: f64,
    pub jumps: Jumps,
}

pub fn build_interaction_ivp(u0: &State, u1: &State, u2: &State, a1: f64, a2: f64) -> Result<SdwIvp> {
    for (st, name) in [(u0, "U0"), (u1, "U1"), (u2, "U2")] {
        if !(st.rho > 0.0 && st.rho.is_finite() && st.u.is_finite()) {
            return Err(Error::Vacuum(format!("{name} has density {}", st.rho)));
        }
    }
    if !(u0.u > u1.u && u1.u > u2.u) {
        return Err(Error::Domain(format!("need u0 > u1 > u2, got {} {} {}", u0.u, u1.u, u2.u)));
    }
    if !(a1 < a2) {
        return Err(Error::Domain(format!("need a1 < a2, got {a1} >= {a2}")));
    }
    let c1 = delta_speed(u0, u1);
    let c2 = delta_speed(u1, u2);
    if !(c1 > c2) {
        return Err(Error::NoInteraction(format!("central lines diverge (c1 = {c1}, c2 = {c2})")));
    }
    let rate1 = (u0.u - u1.u) * (u0.rho * u1.rho).sqrt();
    let rate2 = (u1.u - u2.u) * (u1.rho * u2.rho).sqrt();
    let t = (a2 - a1) / (c1 - c2);
    let x = a1 + c1 * t;
    let xi_t = (rate1 + rate2) * t;
    let us_t = (c1 * rate1 + c2 * rate2) / (rate1 + rate2);
    Ok(SdwIvp { u0: *u0, u1: *u1, u2: *u2, a1, a2, c1, c2, rate1, rate2, x, t, xi_t, us_t, jumps: Jumps::between(u0, u2) })
}

/// Roots `A1 < A2` of `[rho] v^2 - 2 [rho u] v + [rho u^2]`.
pub fn asymptotic_roots(u0: &State, u2: &State) -> Result<(f64, f64)> {
    let j = Jumps::between(u0, u2);
    if j.rho == 0.0 {
        return Err(Error::DegenerateJump("[rho] = 0: the speed equation is linear".into()));
    }
    let w = (u0.u - u2.u).abs() * (u0.rho * u2.rho).sqrt();
    let a = (j.m - w) / j.rho;
    let b = (j.m + w) / j.rho;
    Ok((a.min(b), a.max(b)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Trend {
    Increasing,
    Decreasing,
    Constant,
}

/// Accepted integrator step: conservative state `(xi, xi us, x)`, its time
/// derivative, and the continuous-extension coefficient of the step ending
/// here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathSample {
    pub t: f64,
    pub y: [f64; 3],
    pub dy: [f64; 3],
    #[serde(skip)]
    pub dense: Option<[f64; 3]>,
}

impl PathSample {
    pub fn xi(&self) -> f64 {
        self.y[0]
    }
    pub fn us(&self) -> f64 {
        self.y[1] / self.y[0]
    }
    pub fn x(&self) -> f64 {
        self.y[2]
    }
}

/// Shadow-wave path after the interaction, with dense evaluation.
#[derive(Debug, Clone, Serialize)]
pub struct SdwPath {
    pub ivp: SdwIvp,
    pub samples: Vec<PathSample>,
    /// `None` when `[rho] = 0`.
    pub roots: Option<(f64, f64)>,
}

impl SdwPath {
    pub fn t_end(&self) -> f64 {
        self.samples.last().map_or(self.ivp.t, |s| s.t)
    }

    /// `(xi, us, x)` at time `t` in `[T, t_end]` from the integrator's
    /// continuous extension of the conservative variables.
    pub fn at(&self, t: f64) -> Option<(f64, f64, f64)> {
        let s = &self.samples;
        if s.is_empty() || t < s[0].t || t > s[s.len() - 1].t {
            return None;
        }
        let k = s.partition_point(|p| p.t <= t);
        if k == s.len() {
            let p = s[k - 1];
            return Some((p.xi(), p.us(), p.x()));
        }
        let acc = |p: &PathSample| ode::Accepted { t: p.t, y: p.y, dy: p.dy, dense: p.dense };
        let (p, q) = (acc(&s[k - 1]), acc(&s[k]));
        let y: Vec<f64> = (0..3).map(|i| ode::dense_eval(&p, &q, i, t)).collect();
        Some((y[0], y[1] / y[0], y[2]))
    }

    /// The root the speed is attracted to: `A1` if `rho0 > rho2`, `A2` if
    /// `rho2 > rho0`.
    pub fn target_root(&self) -> Option<f64> {
        let (a1, a2) = self.roots?;
        Some(if self.ivp.jumps.rho < 0.0 { a1 } else { a2 })
    }

    /// Direction of `us` from the sign of `us'` at `T`.
    pub fn trend(&self) -> Trend {
        let p = self.samples[0];
        // d(us)/dt = ((xi us)' - us xi') / xi
        let dus = (p.dy[1] - p.us() * p.dy[0]) / p.xi();
        let scale = p.us().abs().max(1.0) / p.xi() * 1e-14;
        if dus > scale {
            Trend::Increasing
        } else if dus < -scale {
            Trend::Decreasing
        } else {
            Trend::Constant
        }
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "t,xi,us,x")?;
        for s in &self.samples {
            writeln!(w, "{},{},{},{}", s.t, s.xi(), s.us(), s.x())?;
        }
        Ok(())
    }
}

/// Integrate the conservative system
/// `xi' = us [rho] - [rho u]`, `(xi us)' = us [rho u] - [rho u^2]`, `x' = us`
/// from `T` to `t_end`.
///
/// Fails with [`Error::Integrity`] as soon as an accepted step has
/// `xi <= 0`, a non-increasing `xi`, or `us` outside `[u2, u0]` by more
/// than `tol` (relative to the velocity scale).
pub fn integrate_sdw(ivp: &SdwIvp, t_end: f64, tol: f64) -> Result<SdwPath> {
    if !(t_end > ivp.t) {
        return Err(Error::Domain(format!("t_end = {t_end} must exceed the interaction time {}", ivp.t)));
    }
    let j = ivp.jumps;
    let rhs = |_t: f64, y: &[f64; 3]| {
        let us = y[1] / y[0];
        [us * j.rho - j.m, us * j.m - j.mu2, us]
    };
    let (lo, hi) = (ivp.u2.u, ivp.u0.u);
    let slack = tol * lo.abs().max(hi.abs()).max(1.0);
    let mut samples: Vec<PathSample> = Vec::new();
    let y0 = [ivp.xi_t, ivp.xi_t * ivp.us_t, ivp.x];
    let opts = OdeOptions { rtol: tol, atol: tol, ..Default::default() };
    ode::integrate(rhs, ivp.t, y0, t_end, opts, |a| {
        let (t, s) = (a.t, PathSample { t: a.t, y: a.y, dy: a.dy, dense: a.dense });
        if !(s.xi() > 0.0) {
            return Err(Error::Integrity(format!("xi = {} at t = {t}", s.xi())));
        }
        if let Some(prev) = samples.last() {
            if !(s.xi() > prev.xi()) {
                return Err(Error::Integrity(format!("xi stopped increasing at t = {t}")));
            }
        }
        let us = s.us();
        if us < lo - slack || us > hi + slack {
            return Err(Error::Integrity(format!("us = {us} left [{lo}, {hi}] at t = {t}")));
        }
        samples.push(s);
        Ok(())
    })?;
    let roots = asymptotic_roots(&ivp.u0, &ivp.u2).ok();
    Ok(SdwPath { ivp: *ivp, samples, roots })
}
