//! Elementary wave curves of the perturbed system in both coordinate
//! systems: primitive `(rho, u)` and Riemann invariants `(r, s)`.

use serde::{Deserialize, Serialize};

use super::params::{to_invariants, GasParams, Invariants, State};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    One,
    Two,
}

impl Family {
    pub fn index(self) -> u8 {
        match self {
            Family::One => 1,
            Family::Two => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WaveKind {
    Shock,
    Rarefaction,
}

impl WaveKind {
    pub fn label(self) -> &'static str {
        match self {
            WaveKind::Shock => "shock",
            WaveKind::Rarefaction => "rarefaction",
        }
    }
}

/// `(a - 1, ln a)` for `a = rho / rho_b`. Near `a = 1` the logarithm goes
/// through `ln_1p`; far from it `rho_b + d rho_b` no longer pins `rho`
/// down, so the ratio is taken directly.
pub(crate) fn log_ratio(rho: f64, rho_b: f64) -> (f64, f64) {
    let d = (rho - rho_b) / rho_b;
    let ln_a = if d.abs() < 0.5 { d.ln_1p() } else { (rho / rho_b).ln() };
    (d, ln_a)
}

/// `sqrt((a - 1)(a^gamma - 1) / a)` for `d = a - 1`, `ln_a = ln a`.
///
/// Both factors share a sign, so the radicand is non-negative on either
/// side of `a = 1`.
fn shock_root(d: f64, ln_a: f64, gamma: f64) -> f64 {
    let prod = d * (gamma * ln_a).exp_m1();
    (prod * (-ln_a).exp()).max(0.0).sqrt()
}

/// Velocity change along the 1-curve through a base state of density
/// `rho_b`, parameterised by the density `rho` at the other end, with the
/// sign convention of a 2-curve: increasing in `rho`, zero at `rho_b`.
///
/// For `rho > rho_b` this is the shock branch `kappa rho_b^eps A(alpha)`;
/// below it is the rarefaction branch `(rho^eps - rho_b^eps) / sqrt(eps)`.
pub(crate) fn velocity_jump(rho: f64, rho_b: f64, p: &GasParams) -> f64 {
    let (d, ln_a) = log_ratio(rho, rho_b);
    let scale = (p.eps() * rho_b.ln()).exp();
    if d > 0.0 {
        p.kappa() * scale * shock_root(d, ln_a, p.gamma())
    } else {
        scale * (p.eps() * ln_a).exp_m1() / p.sqrt_eps()
    }
}

/// State on the named wave curve through the left state `base` (the curve
/// of right states reachable from `base` by a single wave).
pub fn wave_curve(
    base: &State,
    family: Family,
    kind: WaveKind,
    target_rho: f64,
    p: &GasParams,
) -> Result<State> {
    base.require_positive("base state")?;
    let rho0 = base.rho;
    let ok = match (family, kind) {
        (Family::One, WaveKind::Shock) => target_rho >= rho0,
        (Family::One, WaveKind::Rarefaction) => target_rho >= 0.0 && target_rho <= rho0,
        (Family::Two, WaveKind::Shock) => target_rho > 0.0 && target_rho <= rho0,
        (Family::Two, WaveKind::Rarefaction) => target_rho >= rho0,
    };
    if !ok || !target_rho.is_finite() {
        return Err(Error::Branch(format!(
            "{family:?}-{kind:?} from rho = {rho0} cannot reach rho = {target_rho}"
        )));
    }
    if target_rho == rho0 {
        return Ok(*base);
    }
    let u = match (family, kind) {
        (Family::One, WaveKind::Shock) => base.u - velocity_jump(target_rho, rho0, p),
        (Family::One, WaveKind::Rarefaction) => {
            if target_rho == 0.0 {
                base.u + (p.eps() * rho0.ln()).exp() / p.sqrt_eps()
            } else {
                base.u - velocity_jump(target_rho, rho0, p)
            }
        }
        (Family::Two, WaveKind::Shock) => {
            // u - u0 = kappa rho0^eps A(alpha) sign(rho - rho0)
            let (d, ln_a) = log_ratio(target_rho, rho0);
            let scale = (p.eps() * rho0.ln()).exp();
            base.u - p.kappa() * scale * shock_root(d, ln_a, p.gamma())
        }
        (Family::Two, WaveKind::Rarefaction) => {
            let (_, ln_a) = log_ratio(target_rho, rho0);
            base.u + (p.eps() * rho0.ln()).exp() * (p.eps() * ln_a).exp_m1() / p.sqrt_eps()
        }
    };
    Ok(State::new(target_rho, u))
}

/// Shock curves written in Riemann invariants: the point reached from
/// `base` by an `family`-shock with density ratio `alpha = rho / rho0`
/// (`alpha >= 1` for 1-shocks, `0 < alpha <= 1` for 2-shocks).
pub fn shock_curve_invariants(base: &State, family: Family, alpha: f64, p: &GasParams) -> Result<Invariants> {
    let iv0 = to_invariants(base, p)?;
    let valid = match family {
        Family::One => alpha >= 1.0,
        Family::Two => alpha > 0.0 && alpha <= 1.0,
    };
    if !valid {
        return Err(Error::Branch(format!("{family:?}-shock with density ratio {alpha}")));
    }
    let scale = p.kappa() * (p.eps() * base.rho.ln()).exp();
    let d = alpha - 1.0;
    let ln_a = alpha.ln();
    let a = shock_root(d, ln_a, p.gamma());
    // sqrt(gamma) (alpha^eps - 1) / eps
    let b = p.gamma().sqrt() * (p.eps() * ln_a).exp_m1() / p.eps();
    Ok(match family {
        Family::One => Invariants { r: iv0.r - scale * (a + b), s: iv0.s - scale * (a - b) },
        // b <= 0 here: 1 - alpha^eps = -(alpha^eps - 1)
        Family::Two => Invariants { s: iv0.s - scale * (a - b), r: iv0.r - scale * (a + b) },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::params::from_invariants;

    fn p05() -> GasParams {
        GasParams::new_inclusive(0.5).unwrap()
    }

    #[test]
    fn curves_pass_through_base() {
        let p = GasParams::new(0.07).unwrap();
        let base = State::new(1.3, -0.2);
        for fam in [Family::One, Family::Two] {
            for kind in [WaveKind::Shock, WaveKind::Rarefaction] {
                assert_eq!(wave_curve(&base, fam, kind, 1.3, &p).unwrap(), base);
            }
        }
    }

    #[test]
    fn one_shock_closed_form() {
        let p = p05();
        let st = wave_curve(&State::new(1.0, 1.0), Family::One, WaveKind::Shock, 1.2, &p).unwrap();
        let expect = 1.0 - 0.5 * ((1.2f64 * 1.2 - 1.0) / (1.0 * 1.2 * 0.2)).sqrt() * 0.2;
        assert!((st.u - expect).abs() < 1e-15);

        // Rankine-Hugoniot for both conservation laws
        let (l, r) = (State::new(1.0, 1.0), st);
        let c = (r.momentum() - l.momentum()) / (r.rho - l.rho);
        let fl = l.flux(&p);
        let fr = r.flux(&p);
        assert!((fr[1] - fl[1] - c * (r.momentum() - l.momentum())).abs() < 1e-12);

        let i0 = to_invariants(&l, &p).unwrap();
        let i1 = to_invariants(&r, &p).unwrap();
        assert!(i0.r - i1.r >= i0.s - i1.s);
    }

    #[test]
    fn branch_errors() {
        let p = p05();
        let b = State::new(1.0, 0.0);
        assert!(matches!(wave_curve(&b, Family::One, WaveKind::Shock, 0.9, &p), Err(Error::Branch(_))));
        assert!(matches!(wave_curve(&b, Family::Two, WaveKind::Shock, 1.1, &p), Err(Error::Branch(_))));
        assert!(matches!(wave_curve(&b, Family::One, WaveKind::Rarefaction, 1.1, &p), Err(Error::Branch(_))));
        assert!(matches!(wave_curve(&b, Family::Two, WaveKind::Rarefaction, 0.9, &p), Err(Error::Branch(_))));
        assert!(matches!(wave_curve(&b, Family::Two, WaveKind::Shock, 0.0, &p), Err(Error::Branch(_))));
    }

    #[test]
    fn rarefactions_keep_their_invariant() {
        let p = GasParams::new(0.03).unwrap();
        let b = State::new(2.0, 0.5);
        let ib = to_invariants(&b, &p).unwrap();
        let r1 = wave_curve(&b, Family::One, WaveKind::Rarefaction, 1.1, &p).unwrap();
        let i1 = to_invariants(&r1, &p).unwrap();
        assert!((i1.s - ib.s).abs() < 1e-13 && i1.r > ib.r);
        let r2 = wave_curve(&b, Family::Two, WaveKind::Rarefaction, 3.1, &p).unwrap();
        let i2 = to_invariants(&r2, &p).unwrap();
        assert!((i2.r - ib.r).abs() < 1e-13 && i2.s > ib.s);
    }

    #[test]
    fn invariant_form_matches_primitive_form() {
        let p = GasParams::new(0.13).unwrap();
        let base = State::new(0.7, 0.3);
        for (fam, alpha) in [(Family::One, 1.7), (Family::One, 30.0), (Family::Two, 0.4), (Family::Two, 0.02)] {
            let kind = WaveKind::Shock;
            let st = wave_curve(&base, fam, kind, alpha * base.rho, &p).unwrap();
            let iv = shock_curve_invariants(&base, fam, alpha, &p).unwrap();
            let back = from_invariants(&iv, &p).unwrap();
            assert!((back.rho / st.rho - 1.0).abs() < 1e-10, "{fam:?} {alpha}");
            assert!((back.u - st.u).abs() < 1e-10);
        }
    }
}
