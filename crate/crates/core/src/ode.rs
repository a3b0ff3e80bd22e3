//! Dormand–Prince 5(4) explicit Runge–Kutta integration with dense output
//! for small fixed-dimension systems.

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0];
const A6: [f64; 5] = [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
/// Coefficients of the fourth-order continuous extension.
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Initial step; chosen from the local scale of the problem when `None`.
    pub h_init: Option<f64>,
    pub h_max: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self { rtol: 1e-10, atol: 1e-10, h_init: None, h_max: f64::INFINITY, max_steps: 1_000_000 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, ks: &[[f64; N]], coef: &[f64]) -> [f64; N] {
    let mut out = *y;
    for (k, &a) in ks.iter().zip(coef) {
        if a != 0.0 {
            for i in 0..N {
                out[i] += h * a * k[i];
            }
        }
    }
    out
}

struct StepOut<const N: usize> {
    y5: [f64; N],
    err: [f64; N],
    k7: [f64; N],
    dense: [f64; N],
}

/// One Dormand–Prince step; `k1 = f(t, y)` is passed in so that
/// first-same-as-last saves a call.
fn step<const N: usize, F>(f: &mut F, t: f64, y: &[f64; N], k1: [f64; N], h: f64) -> StepOut<N>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    let mut ks = [[0.0; N]; 7];
    ks[0] = k1;
    ks[1] = f(t + C[1] * h, &axpy(y, h, &ks[..1], &A2));
    ks[2] = f(t + C[2] * h, &axpy(y, h, &ks[..2], &A3));
    ks[3] = f(t + C[3] * h, &axpy(y, h, &ks[..3], &A4));
    ks[4] = f(t + C[4] * h, &axpy(y, h, &ks[..4], &A5));
    ks[5] = f(t + C[5] * h, &axpy(y, h, &ks[..5], &A6));
    let y5 = axpy(y, h, &ks[..6], &B5[..6]);
    ks[6] = f(t + h, &y5);
    let mut err = [0.0; N];
    let mut dense = [0.0; N];
    for i in 0..N {
        let (mut e, mut d) = (0.0, 0.0);
        for j in 0..7 {
            e += (B5[j] - B4[j]) * ks[j][i];
            d += D[j] * ks[j][i];
        }
        err[i] = h * e;
        dense[i] = h * d;
    }
    StepOut { y5, err, k7: ks[6], dense }
}

/// An accepted point of the solution. `dense` holds the extra coefficient
/// of the continuous extension over the step that ends here (`None` at the
/// initial point).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accepted<const N: usize> {
    pub t: f64,
    pub y: [f64; N],
    pub dy: [f64; N],
    pub dense: Option<[f64; N]>,
}

/// Fourth-order continuous extension between two consecutive accepted
/// points, component `i`, at time `t`.
pub fn dense_eval<const N: usize>(p: &Accepted<N>, q: &Accepted<N>, i: usize, t: f64) -> f64 {
    let h = q.t - p.t;
    let th = (t - p.t) / h;
    let r2 = q.y[i] - p.y[i];
    let r3 = h * p.dy[i] - r2;
    let r4 = r2 - h * q.dy[i] - r3;
    let r5 = q.dense.map_or(0.0, |d| d[i]);
    let th1 = 1.0 - th;
    p.y[i] + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)))
}

/// Adaptive integration from `t0` to `t_end`.
///
/// `observer` is called at `t0` and after every accepted step, so a caller
/// can keep a dense representation of the solution (see [`dense_eval`]); an
/// error from the observer aborts the integration.
pub fn integrate<const N: usize, F, O>(
    mut f: F,
    t0: f64,
    y0: [f64; N],
    t_end: f64,
    opts: OdeOptions,
    mut observer: O,
) -> Result<OdeStats>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
    O: FnMut(&Accepted<N>) -> Result<()>,
{
    if !(t_end > t0) {
        return Err(Error::Domain(format!("integration needs t_end > t0 ({t_end} <= {t0})")));
    }
    let mut stats = OdeStats::default();
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    stats.evaluations += 1;
    observer(&Accepted { t, y, dy: k1, dense: None })?;

    let scale = |y: &[f64; N], i: usize| opts.atol + opts.rtol * y[i].abs();
    let mut h = match opts.h_init {
        Some(h) => h,
        None => {
            // Hairer's starting-step heuristic, first part
            let d0 = (0..N).map(|i| (y[i] / scale(&y, i)).powi(2)).sum::<f64>().sqrt();
            let d1 = (0..N).map(|i| (k1[i] / scale(&y, i)).powi(2)).sum::<f64>().sqrt();
            if d0 < 1e-5 || d1 < 1e-5 {
                1e-6
            } else {
                0.01 * d0 / d1
            }
        }
    }
    .min(opts.h_max)
    .min(t_end - t0);

    let mut last_rejected = false;
    while t < t_end {
        if stats.accepted + stats.rejected >= opts.max_steps {
            return Err(Error::numerics("ODE step limit reached", t0, t));
        }
        let h_try = h.min(t_end - t);
        let StepOut { y5, err, k7, dense } = step(&mut f, t, &y, k1, h_try);
        stats.evaluations += 6;
        let mut en = 0.0;
        for i in 0..N {
            let sc = opts.atol + opts.rtol * y[i].abs().max(y5[i].abs());
            en += (err[i] / sc).powi(2);
        }
        let en = (en / N as f64).sqrt();
        if !en.is_finite() {
            return Err(Error::numerics("non-finite ODE error estimate", t, t + h_try));
        }
        if en <= 1.0 {
            t = if t_end - (t + h_try) < 1e-14 * t_end.abs().max(1.0) { t_end } else { t + h_try };
            y = y5;
            k1 = k7;
            stats.accepted += 1;
            observer(&Accepted { t, y, dy: k1, dense: Some(dense) })?;
            let fac = if en == 0.0 { 5.0 } else { (0.9 * en.powf(-0.2)).clamp(0.2, 5.0) };
            h = (h_try * if last_rejected { fac.min(1.0) } else { fac }).min(opts.h_max);
            last_rejected = false;
        } else {
            stats.rejected += 1;
            h = h_try * (0.9 * en.powf(-0.2)).max(0.1);
            last_rejected = true;
            if h < 1e-14 * t.abs().max(1.0) {
                return Err(Error::numerics("ODE step size underflow", t, t + h));
            }
        }
    }
    Ok(stats)
}

/// Fixed-step integration with the fifth-order weights; used for
/// convergence-order checks.
pub fn integrate_fixed<const N: usize, F>(mut f: F, t0: f64, y0: [f64; N], t_end: f64, n_steps: usize) -> [f64; N]
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    let h = (t_end - t0) / n_steps as f64;
    let mut y = y0;
    let mut k1 = f(t0, &y);
    for n in 0..n_steps {
        let t = t0 + n as f64 * h;
        let out = step(&mut f, t, &y, k1, h);
        y = out.y5;
        k1 = out.k7;
    }
    y
}
