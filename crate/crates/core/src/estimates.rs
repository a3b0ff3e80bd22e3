//! Evaluable form of the local interaction estimates: the shock-curve
//! generating function `f`, its inverse, the slope function `h`, the curve
//! functions `g1`/`g2`, closed-form strength bounds, and an empirical
//! estimate of the interaction constant `C*` together with `C0`.
//!
//! Along a 1-shock from a base state of density `rho0` with density ratio
//! `alpha >= 1`,
//!
//! ```text
//! r0 - r = kappa rho0^eps (A(alpha) + B(alpha))
//! s0 - s = kappa rho0^eps (A(alpha) - B(alpha))
//! A = sqrt((alpha - 1)(alpha^gamma - 1) / alpha),  B = sqrt(gamma) (alpha^eps - 1) / eps
//! ```
//!
//! and `f = A + B`. Along a 2-shock (`alpha <= 1`) the roles of `r` and `s`
//! swap, so the 2-family generating function is `A - B`. In both cases
//! `g'(w) = h(alpha)` with `h = ((Y - 1)/(Y + 1))^2`,
//! `Y = sqrt(gamma alpha^gamma (alpha - 1) / (alpha^gamma - 1))`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::{shock_curve_invariants, to_invariants, Family, GasParams, State};
use crate::roots::{self, RootOptions};

/// Curve functions of one family anchored at a base density.
#[derive(Debug, Clone, Copy)]
pub struct CurveFunctions {
    pub params: GasParams,
    pub base_rho: f64,
}

impl CurveFunctions {
    pub fn new(params: GasParams, base_rho: f64) -> Result<Self> {
        if !(base_rho > 0.0 && base_rho.is_finite()) {
            return Err(Error::Domain(format!("base density must be positive, got {base_rho}")));
        }
        Ok(Self { params, base_rho })
    }

    /// `kappa rho0^eps`, the scale between invariant jumps and `f`.
    pub fn scale(&self) -> f64 {
        self.params.kappa() * (self.params.eps() * self.base_rho.ln()).exp()
    }
}

fn parts(alpha: f64, p: &GasParams) -> (f64, f64) {
    let d = alpha - 1.0;
    let ln_a = alpha.ln();
    let a = ((d * (p.gamma() * ln_a).exp_m1()) / alpha).max(0.0).sqrt();
    let b = p.gamma().sqrt() * (p.eps() * ln_a).exp_m1() / p.eps();
    (a, b)
}

/// `f(alpha) = A + B` for `alpha >= 1` (1-shocks).
pub fn eval_f(alpha: f64, cf: &CurveFunctions) -> Result<f64> {
    if !(alpha >= 1.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("f needs alpha >= 1, got {alpha}")));
    }
    let (a, b) = parts(alpha, &cf.params);
    Ok(a + b)
}

/// Generating function of the 2-family, `A - B` for `0 < alpha <= 1`;
/// increasing as `alpha` decreases.
pub fn eval_f2(alpha: f64, cf: &CurveFunctions) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!("f2 needs 0 < alpha <= 1, got {alpha}")));
    }
    let (a, b) = parts(alpha, &cf.params);
    Ok(a - b)
}

/// `alpha >= 1` with `f(alpha) = theta`.
pub fn invert_f(theta: f64, cf: &CurveFunctions) -> Result<f64> {
    if !(theta >= 0.0) || !theta.is_finite() {
        return Err(Error::Domain(format!("theta must be non-negative, got {theta}")));
    }
    if theta == 0.0 {
        return Ok(1.0);
    }
    let g = |a: f64| parts(a, &cf.params);
    let resid = |a: f64| {
        let (x, y) = g(a);
        x + y - theta
    };
    let mut hi = 2.0;
    while resid(hi) < 0.0 {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::numerics("f never reaches theta", 1.0, hi));
        }
    }
    let opts = RootOptions { f_tol: 1e-13 * theta.max(1.0), ..Default::default() };
    roots::bracketed(resid, 1.0, hi, opts)
}

/// `0 < alpha <= 1` with `f2(alpha) = theta`.
pub fn invert_f2(theta: f64, cf: &CurveFunctions) -> Result<f64> {
    if !(theta >= 0.0) || !theta.is_finite() {
        return Err(Error::Domain(format!("theta must be non-negative, got {theta}")));
    }
    if theta == 0.0 {
        return Ok(1.0);
    }
    let resid = |a: f64| {
        let (x, y) = parts(a, &cf.params);
        x - y - theta
    };
    let mut lo = 0.5;
    while resid(lo) < 0.0 {
        lo *= 0.5;
        if lo < 1e-300 {
            return Err(Error::numerics("f2 never reaches theta", lo, 1.0));
        }
    }
    let opts = RootOptions { f_tol: 1e-13 * theta.max(1.0), ..Default::default() };
    roots::bracketed(resid, lo, 1.0, opts)
}

/// `d alpha / d theta = 1 / f'(alpha)` in closed form (1-family).
pub fn dalpha_dtheta(alpha: f64, p: &GasParams) -> f64 {
    let y = y_of(alpha, p);
    let g = p.gamma();
    2.0 * y / (g.sqrt() * alpha.powf(0.5 * (g - 3.0)) * (1.0 + y) * (1.0 + y))
}

fn y_of(alpha: f64, p: &GasParams) -> f64 {
    let d = alpha - 1.0;
    if d == 0.0 {
        return 1.0;
    }
    let g = p.gamma();
    // (alpha - 1) / (alpha^gamma - 1)
    let ln_a = if d.abs() < 0.5 { d.ln_1p() } else { alpha.ln() };
    let q = d / (g * ln_a).exp_m1();
    (g * alpha.powf(g) * q).sqrt()
}

/// Slope function `h(alpha) = g'`: family 1 takes `alpha >= 1`, family 2
/// takes `0 < alpha <= 1`; `h(1) = 0`.
pub fn eval_h(alpha: f64, family: Family, p: &GasParams) -> Result<f64> {
    let ok = match family {
        Family::One => alpha >= 1.0 && alpha.is_finite(),
        Family::Two => alpha > 0.0 && alpha <= 1.0,
    };
    if !ok {
        return Err(Error::Domain(format!("h for family {} undefined at alpha = {alpha}", family.index())));
    }
    let y = y_of(alpha, p);
    let t = (y - 1.0) / (y + 1.0);
    Ok(t * t)
}

/// `g(w, rho0) = integral_0^w h(alpha(beta / (kappa rho0^eps))) d beta` by
/// adaptive Simpson quadrature.
///
/// For family 1 this is `s0 - s` as a function of `w = r0 - r` along the
/// 1-shock curve; for family 2 it is `r0 - r` as a function of `w = s0 - s`.
pub fn eval_g(w: f64, family: Family, cf: &CurveFunctions) -> Result<f64> {
    if !(w >= 0.0) || !w.is_finite() {
        return Err(Error::Domain(format!("g needs w >= 0, got {w}")));
    }
    if w == 0.0 {
        return Ok(0.0);
    }
    let scale = cf.scale();
    let p = cf.params;
    let integrand = |beta: f64| -> Result<f64> {
        let theta = beta / scale;
        let alpha = match family {
            Family::One => invert_f(theta, cf)?,
            Family::Two => invert_f2(theta, cf)?,
        };
        eval_h(alpha, family, &p)
    };
    adaptive_simpson(&integrand, 0.0, w, 1e-11)
}

/// `g'(w) = h(alpha(w))`.
pub fn eval_g_prime(w: f64, family: Family, cf: &CurveFunctions) -> Result<f64> {
    let theta = w / cf.scale();
    let alpha = match family {
        Family::One => invert_f(theta, cf)?,
        Family::Two => invert_f2(theta, cf)?,
    };
    eval_h(alpha, family, &cf.params)
}

fn adaptive_simpson<F>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    fn step<F: Fn(f64) -> Result<f64>>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm)?;
        let frm = f(rm)?;
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 {
            return Err(Error::numerics("quadrature recursion limit", a, b));
        }
        if delta.abs() <= 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        Ok(step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
            + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
    }
    let fa = f(a)?;
    let fb = f(b)?;
    let fm = f(0.5 * (a + b))?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 48)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StrengthKind {
    S1,
    S2,
    R1,
    R2,
}

/// Closed-form `(lower, upper)` bounds on a wave strength.
///
/// * `S1`: `base_rho` is the left state, `other_rho > base_rho` the state
///   behind the shock; bounds `r0 - r`.
/// * `S2`: `base_rho` is the right state, `other_rho > base_rho` the state
///   on the left; bounds `s - s1`.
/// * `R1`/`R2`: the exact strength (both entries equal), with
///   `other_rho < base_rho`.
pub fn strength_bounds(kind: StrengthKind, base_rho: f64, other_rho: f64, p: &GasParams) -> Result<(f64, f64)> {
    if !(base_rho > 0.0 && other_rho > 0.0) {
        return Err(Error::Domain("strength bounds need positive densities".into()));
    }
    let se = p.sqrt_eps();
    let e = p.eps();
    match kind {
        StrengthKind::S1 | StrengthKind::S2 => {
            if other_rho < base_rho {
                return Err(Error::Branch(format!("{kind:?} needs rho >= base, got {other_rho} < {base_rho}")));
            }
            let ratio = other_rho / base_rho;
            let base_e = base_rho.powf(e);
            let lower = 2.0 * base_e * se * ratio.ln();
            let upper = if ratio == 1.0 { 0.0 } else { 2.0 * se / p.gamma().sqrt() * ratio.powf(0.5 * p.gamma()) * base_e };
            Ok((lower, upper))
        }
        StrengthKind::R1 | StrengthKind::R2 => {
            if other_rho > base_rho {
                return Err(Error::Branch(format!("{kind:?} needs rho <= base, got {other_rho} > {base_rho}")));
            }
            let v = 2.0 / se * (base_rho.powf(e) - other_rho.powf(e));
            Ok((v, v))
        }
    }
}

/// One random configuration of two parallel shock curves of the same family.
///
/// For family 1: curves from `(rho0)` and `(rho1)` with equal `r`, both
/// continued by `r`-drop `w`; `diff = (s0 - s) - (s1 - s2)` and
/// `gap = s1 - s0`. Family 2 swaps the roles of `r` and `s`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PairSample {
    pub family: Family,
    pub rho0: f64,
    pub rho1: f64,
    pub w: f64,
    pub gap: f64,
    pub diff: f64,
    /// `g'` at the end of the first curve.
    pub slope: f64,
}

impl PairSample {
    /// `diff / (sqrt(eps) w gap)`.
    pub fn ratio(&self, p: &GasParams) -> f64 {
        self.diff / (p.sqrt_eps() * self.w * self.gap)
    }
}

/// Evaluate the two-curve difference exactly through the shock curves.
pub fn pair_sample(family: Family, rho0: f64, rho1: f64, w: f64, p: &GasParams) -> Result<PairSample> {
    if !(rho0 > 0.0 && rho1 > rho0 && w > 0.0) {
        return Err(Error::Domain(format!("pair sample needs 0 < rho0 < rho1, w > 0 (got {rho0}, {rho1}, {w})")));
    }
    let z = |rho: f64| -> Result<(f64, f64)> {
        let cf = CurveFunctions::new(*p, rho)?;
        let theta = w / cf.scale();
        // invariant drop orthogonal to w, measured on the curve itself
        let base = State::new(rho, 0.0);
        let iv0 = to_invariants(&base, p)?;
        match family {
            Family::One => {
                let alpha = invert_f(theta, &cf)?;
                let iv = shock_curve_invariants(&base, Family::One, alpha, p)?;
                Ok((iv0.s - iv.s, eval_h(alpha, family, p)?))
            }
            Family::Two => {
                let alpha = invert_f2(theta, &cf)?;
                let iv = shock_curve_invariants(&base, Family::Two, alpha, p)?;
                Ok((iv0.r - iv.r, eval_h(alpha, family, p)?))
            }
        }
    };
    let (z0, slope) = z(rho0)?;
    let (z1, _) = z(rho1)?;
    let gap = 2.0 * (rho1.powf(p.eps()) - rho0.powf(p.eps())) / p.sqrt_eps();
    Ok(PairSample { family, rho0, rho1, w, gap, diff: z0 - z1, slope })
}

/// Deterministic random sweep of [`pair_sample`] over both families.
///
/// Densities are log-uniform in `[1e-3, rho_ceiling]`, `w` uniform in
/// `(0, 5]`.
pub fn sample_pairs(count: usize, rho_ceiling: f64, p: &GasParams, seed: u64) -> Result<Vec<PairSample>> {
    const RHO_FLOOR: f64 = 1e-3;
    if !(rho_ceiling > RHO_FLOOR) {
        return Err(Error::Domain(format!("rho_ceiling must exceed {RHO_FLOOR}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lf, lc) = (RHO_FLOOR.ln(), rho_ceiling.ln());
    let mut draws = Vec::with_capacity(count);
    while draws.len() < count {
        let a = rng.gen_range(lf..lc).exp();
        let b = rng.gen_range(lf..lc).exp();
        let w = 5.0 * (1.0 - rng.gen::<f64>());
        if a == b {
            continue;
        }
        let fam = if draws.len() % 2 == 0 { Family::One } else { Family::Two };
        draws.push((fam, a.min(b), a.max(b), w));
    }
    draws.par_iter().map(|&(fam, r0, r1, w)| pair_sample(fam, r0, r1, w, p)).collect()
}

/// Interaction constants estimated from a sample sweep.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EstimateConstants {
    pub eps: f64,
    /// sup of sampled `g1'`
    pub c2: f64,
    /// sup of sampled `g2'`
    pub c4: f64,
    pub c3: f64,
    pub c5: f64,
    pub c0: f64,
    /// `max(cstar_s1, cstar_s2)`
    pub cstar: f64,
    pub cstar_s1: f64,
    pub cstar_s2: f64,
    /// most negative sampled two-curve difference (should be >= 0 up to rounding)
    pub min_diff: f64,
    pub sample_count: usize,
    pub rho_ceiling: f64,
    pub seed: u64,
}

impl EstimateConstants {
    /// Monitor constant `4 C* sqrt(eps)`.
    pub fn k_tilde(&self) -> f64 {
        4.0 * self.cstar * self.eps.sqrt()
    }
}

pub fn default_rho_ceiling(p: &GasParams) -> f64 {
    10.0 / p.eps()
}

pub fn estimate_cstar(sample_count: usize, rho_ceiling: f64, p: &GasParams, seed: u64) -> Result<EstimateConstants> {
    if sample_count == 0 {
        return Err(Error::Stats("estimate_cstar needs at least one sample".into()));
    }
    let samples = sample_pairs(sample_count, rho_ceiling, p, seed)?;
    let mut cs = [0.0f64; 2];
    let mut slopes = [0.0f64; 2];
    let mut min_diff = f64::INFINITY;
    let mut seen = [false; 2];
    for s in &samples {
        let i = (s.family.index() - 1) as usize;
        let ratio = s.ratio(p);
        if !ratio.is_finite() {
            continue;
        }
        seen[i] = true;
        cs[i] = cs[i].max(ratio);
        slopes[i] = slopes[i].max(s.slope);
        min_diff = min_diff.min(s.diff);
    }
    if !(seen[0] && seen[1]) {
        return Err(Error::Stats("sample set does not cover both families".into()));
    }
    let (c2, c4) = (slopes[0], slopes[1]);
    if !(c2 < 1.0 && c4 < 1.0) || c2 <= 0.0 || c4 <= 0.0 {
        return Err(Error::Stats(format!("degenerate slope suprema C2 = {c2}, C4 = {c4}")));
    }
    let c3 = (1.0 - c2) / c2;
    let c5 = (1.0 - c4) / c4;
    Ok(EstimateConstants {
        eps: p.eps(),
        c2,
        c4,
        c3,
        c5,
        c0: c3.min(c5),
        cstar: cs[0].max(cs[1]),
        cstar_s1: cs[0],
        cstar_s2: cs[1],
        min_diff,
        sample_count,
        rho_ceiling,
        seed,
    })
}

/// Smallness condition on the initial total variation under which
/// `K F(O) <= min(2, C0)` is guaranteed.
pub fn asakura_gate(tv: f64, c: &EstimateConstants) -> bool {
    let gamma_m1 = 2.0 * c.eps;
    let s2 = std::f64::consts::SQRT_2;
    gamma_m1.sqrt() * tv <= (s2 / 4.0).min(s2 / 8.0 * c.c0) / c.cstar
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::{wave_curve, WaveKind};

    fn cf(eps: f64, rho: f64) -> CurveFunctions {
        CurveFunctions::new(GasParams::new(eps).unwrap(), rho).unwrap()
    }

    #[test]
    fn f_basics() {
        let c = cf(0.25, 1.0);
        assert_eq!(eval_f(1.0, &c).unwrap(), 0.0);
        let (a, b, d) = (eval_f(1.1, &c).unwrap(), eval_f(1.5, &c).unwrap(), eval_f(2.0, &c).unwrap());
        assert!(0.0 < a && a < b && b < d);
        assert!(eval_f(0.9, &c).is_err());
        for k in 0..200 {
            let alpha = 10f64.powf(4.0 * k as f64 / 199.0);
            let g = c.params.gamma();
            assert!(eval_f(alpha, &c).unwrap() <= 2.0 * alpha.powf(g / 2.0) * (1.0 + 1e-14));
        }
    }

    #[test]
    fn invert_round_trip_against_bisection() {
        let c = cf(0.1, 2.0);
        assert_eq!(invert_f(0.0, &c).unwrap(), 1.0);
        for alpha in [1.5, 3.0, 50.0] {
            let theta = eval_f(alpha, &c).unwrap();
            // plain bisection oracle
            let (mut lo, mut hi) = (1.0, 1e3);
            for _ in 0..200 {
                let m = 0.5 * (lo + hi);
                if eval_f(m, &c).unwrap() < theta {
                    lo = m
                } else {
                    hi = m
                }
            }
            let got = invert_f(theta, &c).unwrap();
            assert!((got - alpha).abs() < 1e-10 * alpha);
            assert!((got - 0.5 * (lo + hi)).abs() < 1e-10 * alpha);
            assert!((eval_f(got, &c).unwrap() - theta).abs() <= 1e-12 * theta.max(1.0));
        }
    }

    #[test]
    fn g_prime_derivative_matches_finite_differences() {
        let c = cf(0.05, 1.0);
        for theta in [0.1, 1.0, 7.0] {
            let h = 1e-5 * theta;
            let fd = (invert_f(theta + h, &c).unwrap() - invert_f(theta - h, &c).unwrap()) / (2.0 * h);
            let alpha = invert_f(theta, &c).unwrap();
            let closed = dalpha_dtheta(alpha, &c.params);
            assert!((fd / closed - 1.0).abs() < 1e-6, "theta {theta}: {fd} vs {closed}");
        }
    }

    #[test]
    fn h_matches_derivative_ratio_of_the_curve() {
        // h = d(s0 - s)/d(r0 - r) on S1 and d(r0 - r)/d(s0 - s) on S2
        let p = GasParams::new(0.2).unwrap();
        let base = State::new(1.0, 0.0);
        for (fam, alpha) in [(Family::One, 1.5), (Family::One, 7.0), (Family::Two, 0.5), (Family::Two, 0.05)] {
            let dh = 1e-6 * alpha;
            let a = shock_curve_invariants(&base, fam, alpha - dh, &p).unwrap();
            let b = shock_curve_invariants(&base, fam, alpha + dh, &p).unwrap();
            let ratio = match fam {
                Family::One => (b.s - a.s) / (b.r - a.r),
                Family::Two => (b.r - a.r) / (b.s - a.s),
            };
            let h = eval_h(alpha, fam, &p).unwrap();
            assert!((ratio - h).abs() < 1e-7, "{fam:?} {alpha}: {ratio} vs {h}");
        }
    }

    #[test]
    fn h_range_and_monotonicity() {
        let p = GasParams::new(0.3).unwrap();
        assert_eq!(eval_h(1.0, Family::One, &p).unwrap(), 0.0);
        let mut last = 0.0;
        for k in 1..=400 {
            let alpha = 1.0 + 99.0 * k as f64 / 400.0;
            let h = eval_h(alpha, Family::One, &p).unwrap();
            assert!((0.0..1.0).contains(&h));
            assert!(h >= last - 1e-15);
            last = h;
        }
        assert!(eval_h(0.5, Family::One, &p).is_err());
        assert!(eval_h(1.5, Family::Two, &p).is_err());
    }

    #[test]
    fn g_quadrature_matches_shock_curve() {
        let p = GasParams::new(0.1).unwrap();
        for rho0 in [0.3, 1.0, 12.0] {
            let base = State::new(rho0, 0.4);
            let i0 = to_invariants(&base, &p).unwrap();
            let c = CurveFunctions::new(p, rho0).unwrap();
            for alpha in [1.2, 4.0] {
                let st = wave_curve(&base, Family::One, WaveKind::Shock, alpha * rho0, &p).unwrap();
                let iv = to_invariants(&st, &p).unwrap();
                let g = eval_g(i0.r - iv.r, Family::One, &c).unwrap();
                assert!((g - (i0.s - iv.s)).abs() < 1e-9, "rho0 {rho0} alpha {alpha}");
            }
            for alpha in [0.8, 0.1] {
                let st = wave_curve(&base, Family::Two, WaveKind::Shock, alpha * rho0, &p).unwrap();
                let iv = to_invariants(&st, &p).unwrap();
                let g = eval_g(i0.s - iv.s, Family::Two, &c).unwrap();
                assert!((g - (i0.r - iv.r)).abs() < 1e-9, "rho0 {rho0} alpha {alpha}");
            }
        }
    }

    #[test]
    fn g_is_convex_with_slope_below_one() {
        let c = cf(0.05, 1.0);
        assert_eq!(eval_g(0.0, Family::One, &c).unwrap(), 0.0);
        for fam in [Family::One, Family::Two] {
            for w in [0.1, 1.0, 5.0] {
                let h = 1e-3 * w;
                let gm = eval_g(w - h, fam, &c).unwrap();
                let g0 = eval_g(w, fam, &c).unwrap();
                let gp = eval_g(w + h, fam, &c).unwrap();
                let d1 = (gp - gm) / (2.0 * h);
                let d2 = (gp - 2.0 * g0 + gm) / (h * h);
                assert!((0.0..1.0).contains(&d1), "{fam:?} w={w}: g' = {d1}");
                assert!(d2 >= -1e-4, "{fam:?} w={w}: g'' = {d2}");
                assert!((d1 - eval_g_prime(w, fam, &c).unwrap()).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn strength_bounds_hold_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = GasParams::new(0.02).unwrap();
        for _ in 0..1000 {
            let rho0 = rng.gen_range(-3f64..3.0).exp();
            let alpha = rng.gen_range(0f64..6.0).exp();
            let left = State::new(rho0, 0.0);
            // S1 from left into alpha rho0
            let st = wave_curve(&left, Family::One, WaveKind::Shock, alpha * rho0, &p).unwrap();
            let w = to_invariants(&left, &p).unwrap().r - to_invariants(&st, &p).unwrap().r;
            let (lo, hi) = strength_bounds(StrengthKind::S1, rho0, alpha * rho0, &p).unwrap();
            assert!(lo <= w * (1.0 + 1e-12) && w <= hi * (1.0 + 1e-12), "S1 {lo} {w} {hi}");
            // S2 from a left state of density alpha rho0 into rho0
            let l2 = State::new(alpha * rho0, 0.0);
            let r2 = wave_curve(&l2, Family::Two, WaveKind::Shock, rho0, &p).unwrap();
            let w2 = to_invariants(&l2, &p).unwrap().s - to_invariants(&r2, &p).unwrap().s;
            let (lo, hi) = strength_bounds(StrengthKind::S2, rho0, alpha * rho0, &p).unwrap();
            assert!(lo <= w2 * (1.0 + 1e-12) && w2 <= hi * (1.0 + 1e-12), "S2 {lo} {w2} {hi}");
        }
        assert_eq!(strength_bounds(StrengthKind::S1, 2.0, 2.0, &p).unwrap(), (0.0, 0.0));
        assert_eq!(strength_bounds(StrengthKind::R1, 2.0, 2.0, &p).unwrap(), (0.0, 0.0));
        assert!(matches!(strength_bounds(StrengthKind::S1, 2.0, 1.0, &p), Err(Error::Branch(_))));
    }

    #[test]
    fn rarefaction_strength_is_exact() {
        let p = GasParams::new(0.1).unwrap();
        let left = State::new(2.0, 0.0);
        let st = wave_curve(&left, Family::One, WaveKind::Rarefaction, 0.7, &p).unwrap();
        let exact = to_invariants(&st, &p).unwrap().r - to_invariants(&left, &p).unwrap().r;
        let (v, _) = strength_bounds(StrengthKind::R1, 2.0, 0.7, &p).unwrap();
        assert!((v - exact).abs() < 1e-13);
    }

    #[test]
    fn upper_bound_stays_bounded_at_large_density() {
        for eps in [1e-2, 1e-3, 1e-4] {
            let p = GasParams::new(eps).unwrap();
            let (_, hi) = strength_bounds(StrengthKind::S1, 1.0, 1.0 / eps, &p).unwrap();
            assert!(hi < 3.0, "eps {eps}: {hi}");
        }
    }

    #[test]
    fn pair_differences_are_nonnegative() {
        let p = GasParams::new(0.05).unwrap();
        let samples = sample_pairs(500, default_rho_ceiling(&p), &p, 3).unwrap();
        assert!(samples.iter().all(|s| s.diff >= -1e-12 * s.w.max(1.0)));
        assert!(samples.iter().all(|s| s.gap > 0.0));
    }

    #[test]
    fn estimate_requires_samples() {
        let p = GasParams::new(0.05).unwrap();
        assert!(matches!(estimate_cstar(0, 100.0, &p, 1), Err(Error::Stats(_))));
    }
}
