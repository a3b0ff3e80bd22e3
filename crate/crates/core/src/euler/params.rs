use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Densities below this are treated as vacuum by the perturbed solver.
pub const VACUUM_RHO: f64 = 1e-12;

/// Pressure law `p = kappa^2 rho^gamma` with `gamma = 1 + 2 eps` and
/// `kappa = sqrt(eps / gamma)`, so that `kappa * sqrt(gamma) = sqrt(eps)`.
///
/// Only `eps` is stored; the other constants are always derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GasParams {
    eps: f64,
    #[serde(skip)]
    sqrt_eps: f64,
    #[serde(skip)]
    at_boundary: bool,
}

impl GasParams {
    /// Strict constructor: `0 < eps < 1/2`, the range where the interaction
    /// estimates are valid.
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 0.5) {
            return Err(Error::Domain(format!("eps must lie in (0, 1/2), got {eps}")));
        }
        Ok(Self::unchecked(eps))
    }

    /// Like [`GasParams::new`] but also admits `eps = 1/2` (the `gamma = 2`
    /// row of the reference tables). Runs at the boundary carry
    /// [`GasParams::at_boundary`] so estimate-based monitors can be treated
    /// as advisory.
    pub fn new_inclusive(eps: f64) -> Result<Self> {
        if eps == 0.5 {
            return Ok(Self::unchecked(eps));
        }
        Self::new(eps)
    }

    fn unchecked(eps: f64) -> Self {
        Self { eps, sqrt_eps: eps.sqrt(), at_boundary: eps >= 0.5 }
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn gamma(&self) -> f64 {
        1.0 + 2.0 * self.eps
    }

    pub fn kappa(&self) -> f64 {
        self.sqrt_eps / self.gamma().sqrt()
    }

    pub fn sqrt_eps(&self) -> f64 {
        self.sqrt_eps
    }

    pub fn at_boundary(&self) -> bool {
        self.at_boundary
    }

    pub fn pressure(&self, rho: f64) -> f64 {
        let k = self.kappa();
        k * k * rho.powf(self.gamma())
    }

    /// `sqrt(p'(rho)) = sqrt(eps) rho^eps`.
    pub fn sound_speed(&self, rho: f64) -> f64 {
        self.sqrt_eps * rho.powf(self.eps)
    }

    /// `(rho^eps - 1) / sqrt(eps)`, evaluated without cancellation.
    pub(crate) fn invariant_offset(&self, rho: f64) -> f64 {
        (self.eps * rho.ln()).exp_m1() / self.sqrt_eps
    }
}

impl<'de> Deserialize<'de> for GasParams {
    fn deserialize<D>(de: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            eps: f64,
        }
        let raw = Raw::deserialize(de)?;
        GasParams::new_inclusive(raw.eps).map_err(serde::de::Error::custom)
    }
}

/// Primitive state: density and velocity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub rho: f64,
    pub u: f64,
}

impl State {
    pub const fn new(rho: f64, u: f64) -> Self {
        Self { rho, u }
    }

    pub fn momentum(&self) -> f64 {
        self.rho * self.u
    }

    /// Flux of the perturbed system: `(rho u, rho u^2 + p)`.
    pub fn flux(&self, p: &GasParams) -> [f64; 2] {
        [self.rho * self.u, self.rho * self.u * self.u + p.pressure(self.rho)]
    }

    pub fn conserved(&self) -> [f64; 2] {
        [self.rho, self.rho * self.u]
    }

    pub(crate) fn require_positive(&self, what: &str) -> Result<()> {
        if self.rho > VACUUM_RHO && self.rho.is_finite() && self.u.is_finite() {
            Ok(())
        } else {
            Err(Error::Vacuum(format!("{what} has density {}", self.rho)))
        }
    }
}

/// Riemann invariants: `s` is constant across 1-rarefactions, `r` across
/// 2-rarefactions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Invariants {
    pub r: f64,
    pub s: f64,
}

pub fn eigenvalues(st: &State, p: &GasParams) -> Result<(f64, f64)> {
    st.require_positive("state")?;
    let c = p.sound_speed(st.rho);
    Ok((st.u - c, st.u + c))
}

pub fn to_invariants(st: &State, p: &GasParams) -> Result<Invariants> {
    st.require_positive("state")?;
    let off = p.invariant_offset(st.rho);
    Ok(Invariants { r: st.u - off, s: st.u + off })
}

pub fn from_invariants(iv: &Invariants, p: &GasParams) -> Result<State> {
    // rho^eps = 1 + sqrt(eps) (s - r) / 2
    let x = 0.5 * p.sqrt_eps() * (iv.s - iv.r);
    if !(x > -1.0) {
        return Err(Error::Vacuum(format!(
            "invariants (r = {}, s = {}) imply a non-positive rho^eps",
            iv.r, iv.s
        )));
    }
    let rho = (x.ln_1p() / p.eps()).exp();
    if !(rho > 0.0) {
        return Err(Error::Vacuum(format!("invariants underflow to rho = {rho}")));
    }
    Ok(State { rho, u: 0.5 * (iv.r + iv.s) })
}
