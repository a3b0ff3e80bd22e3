//! Scalar root finding on a sign-changing bracket.
//!
//! The wave-curve functions used throughout the crate are monotone, so a
//! bracket is always available; what matters is reaching full double
//! precision quickly and failing loudly with the bracket when that is not
//! possible.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    /// Stop as soon as `|f(x)| <= f_tol`.
    pub f_tol: f64,
    /// Stop once the bracket is narrower than `x_rel * |x| + x_abs`.
    pub x_rel: f64,
    pub x_abs: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self { f_tol: 1e-14, x_rel: 4.0 * f64::EPSILON, x_abs: 1e-300, max_iter: 400 }
    }
}

/// Illinois-modified regula falsi with a bisection fallback whenever the
/// secant step fails to halve the bracket.
///
/// `f(lo)` and `f(hi)` must have opposite signs (or one of them be zero).
pub fn bracketed<F>(mut f: F, lo: f64, hi: f64, opts: RootOptions) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let mut fb = f(b);
    if !fa.is_finite() || !fb.is_finite() {
        return Err(Error::numerics("non-finite value at bracket end", a, b));
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::numerics("bracket does not change sign", a, b));
    }

    // side = -1 when `a` was retained twice in a row, +1 for `b`
    let mut side = 0i8;
    let mut width = b - a;
    for _ in 0..opts.max_iter {
        let mut x = (a * fb - b * fa) / (fb - fa);
        if !(x > a && x < b) {
            x = 0.5 * (a + b);
        }
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::numerics("non-finite function value", a, b));
        }
        if fx.abs() <= opts.f_tol {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        } else {
            b = x;
            fb = fx;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        }

        let new_width = b - a;
        if new_width > 0.5 * width {
            // slow progress: force a bisection step
            let m = 0.5 * (a + b);
            let fm = f(m);
            if fm.abs() <= opts.f_tol {
                return Ok(m);
            }
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
                fb = fm;
            }
            side = 0;
        }
        width = b - a;
        let mid = 0.5 * (a + b);
        if width <= opts.x_rel * mid.abs() + opts.x_abs {
            return Ok(if fa.abs() < fb.abs() { a } else { b });
        }
    }
    Err(Error::numerics("iteration limit reached", a, b))
}

/// Plain bisection in `ln x` on a positive bracket. Slow but has no
/// failure modes beyond a missing sign change; used as an independent
/// cross-check of [`bracketed`].
pub fn log_bisection<F>(mut f: F, lo: f64, hi: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::numerics("log bisection needs 0 < lo < hi", lo, hi));
    }
    let (mut a, mut b) = (lo.ln(), hi.ln());
    let fa = f(lo);
    let fb = f(hi);
    if fa.signum() == fb.signum() {
        return Err(Error::numerics("bracket does not change sign", lo, hi));
    }
    let sa = fa.signum();
    for _ in 0..max_iter {
        let m = 0.5 * (a + b);
        let fm = f(m.exp());
        if fm == 0.0 {
            return Ok(m.exp());
        }
        if fm.signum() == sa {
            a = m;
        } else {
            b = m;
        }
        if b.exp() - a.exp() <= 2.0 * f64::EPSILON * b.exp() {
            break;
        }
    }
    Ok((0.5 * (a + b)).exp())
}
