//! Weak-form residual of pressureless gas dynamics against smooth test
//! functions, for solutions made of constant states and delta shocks.
//!
//! A solution is described by time slices: at each `t` a list of points
//! `x_k` carrying a delta measure (mass `xi`, momentum `xi v`, momentum flux
//! `xi v^2`) separating constant states. For a test function `phi` the
//! residual of `w_t + g_x = 0` is
//!
//! ```text
//! int int (w phi_t + g phi_x) dx dt + int sum_k (W_k phi_t + G_k phi_x)(x_k(t), t) dt
//! ```
//!
//! Test functions are tensor products `B(x) B(t)` of the quartic bump
//! `B(z) = (1 - z^2)^2` on `[-1, 1]`, so spatial integrals over constant
//! states are exact and only the time integral is done by Gauss–Legendre
//! quadrature, split at every kink of the slice structure.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::interaction::SdwPath;
use super::pgd::PgdRiemannSolution;
use crate::euler::State;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaPoint {
    pub x: f64,
    pub mass: f64,
    pub velocity: f64,
}

/// Constant states `states[0..=n]` separated by the points `deltas[0..n]`.
/// A point with zero mass is an ordinary discontinuity.
#[derive(Debug, Clone, PartialEq)]
pub struct Slice {
    pub states: Vec<State>,
    pub deltas: Vec<DeltaPoint>,
}

pub trait WeakSolution {
    fn slice(&self, t: f64) -> Slice;
    /// Times at which the slice structure changes non-smoothly.
    fn kinks(&self) -> Vec<f64>;
    /// Position of the main central line, used to place test functions.
    fn center(&self, t: f64) -> f64;
}

impl WeakSolution for PgdRiemannSolution {
    fn slice(&self, t: f64) -> Slice {
        match *self {
            PgdRiemannSolution::Trivial { state } => Slice { states: vec![state], deltas: vec![] },
            PgdRiemannSolution::DeltaShock { left, right, speed, strength_rate } => Slice {
                states: vec![left, right],
                deltas: vec![DeltaPoint { x: speed * t, mass: strength_rate * t, velocity: speed }],
            },
            PgdRiemannSolution::VacuumFan { left, right } => Slice {
                states: vec![left, State::new(0.0, 0.0), right],
                deltas: vec![
                    DeltaPoint { x: left.u * t, mass: 0.0, velocity: left.u },
                    DeltaPoint { x: right.u * t, mass: 0.0, velocity: right.u },
                ],
            },
        }
    }

    fn kinks(&self) -> Vec<f64> {
        vec![0.0]
    }

    fn center(&self, t: f64) -> f64 {
        match *self {
            PgdRiemannSolution::Trivial { .. } => 0.0,
            PgdRiemannSolution::DeltaShock { speed, .. } => speed * t,
            PgdRiemannSolution::VacuumFan { left, right } => 0.5 * (left.u + right.u) * t,
        }
    }
}

/// The full two-wave solution: both incoming delta shocks for `t < T`, the
/// integrated path afterwards.
impl WeakSolution for SdwPath {
    fn slice(&self, t: f64) -> Slice {
        let ivp = &self.ivp;
        if t < ivp.t {
            Slice {
                states: vec![ivp.u0, ivp.u1, ivp.u2],
                deltas: vec![
                    DeltaPoint { x: ivp.a1 + ivp.c1 * t, mass: ivp.rate1 * t, velocity: ivp.c1 },
                    DeltaPoint { x: ivp.a2 + ivp.c2 * t, mass: ivp.rate2 * t, velocity: ivp.c2 },
                ],
            }
        } else {
            let (xi, us, x) = self.at(t).unwrap_or_else(|| {
                let s = self.samples.last().expect("path has samples");
                (s.xi(), s.us(), s.x())
            });
            Slice { states: vec![ivp.u0, ivp.u2], deltas: vec![DeltaPoint { x, mass: xi, velocity: us }] }
        }
    }

    fn kinks(&self) -> Vec<f64> {
        // the dense interpolant is only piecewise smooth between steps
        let mut k = vec![0.0];
        k.extend(self.samples.iter().map(|s| s.t));
        k
    }

    fn center(&self, t: f64) -> f64 {
        let ivp = &self.ivp;
        if t < ivp.t {
            0.5 * (ivp.a1 + ivp.c1 * t + ivp.a2 + ivp.c2 * t)
        } else {
            self.at(t).map_or(ivp.x, |(_, _, x)| x)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakBox {
    pub t_lo: f64,
    pub t_hi: f64,
}

/// Quartic bump `(1 - z^2)^2` centred at `c` with half-width `h`.
#[derive(Debug, Clone, Copy)]
struct Bump {
    c: f64,
    h: f64,
}

impl Bump {
    fn z(&self, x: f64) -> f64 {
        ((x - self.c) / self.h).clamp(-1.0, 1.0)
    }
    fn value(&self, x: f64) -> f64 {
        let z = self.z(x);
        (1.0 - z * z).powi(2)
    }
    fn deriv(&self, x: f64) -> f64 {
        let z = self.z(x);
        -4.0 * z * (1.0 - z * z) / self.h
    }
    /// Antiderivative, zero at the left end of the support.
    fn primitive(&self, x: f64) -> f64 {
        let z = self.z(x);
        let p = |z: f64| z - 2.0 * z.powi(3) / 3.0 + z.powi(5) / 5.0;
        self.h * (p(z) - p(-1.0))
    }
}

fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Times in `(a, b)` at which a point of the slice crosses an edge of the
/// spatial support; the integrand is only piecewise smooth across them.
fn edge_crossings(sol: &dyn WeakSolution, bx: Bump, a: f64, b: f64, out: &mut Vec<f64>) {
    const SAMPLES: usize = 64;
    let eps = 1e-9 * (b - a);
    let (a, b) = (a + eps, b - eps);
    let xs = |t: f64| sol.slice(t).deltas.iter().map(|d| d.x).collect::<Vec<_>>();
    let mut prev_t = a;
    let mut prev = xs(a);
    for i in 1..=SAMPLES {
        let t = a + (b - a) * i as f64 / SAMPLES as f64;
        let cur = xs(t);
        for k in 0..cur.len().min(prev.len()) {
            for edge in [bx.c - bx.h, bx.c + bx.h] {
                if (prev[k] - edge) * (cur[k] - edge) < 0.0 {
                    let (mut lo, mut hi) = (prev_t, t);
                    let s_lo = prev[k] - edge;
                    for _ in 0..80 {
                        let m = 0.5 * (lo + hi);
                        if (xs(m)[k] - edge) * s_lo > 0.0 {
                            lo = m;
                        } else {
                            hi = m;
                        }
                    }
                    out.push(0.5 * (lo + hi));
                }
            }
        }
        prev = cur;
        prev_t = t;
    }
}

/// Residual of both conservation laws for one test function `bx(x) bt(t)`.
fn residual_one(sol: &dyn WeakSolution, bx: Bump, bt: Bump, kinks: &[f64], rule: &[(f64, f64)]) -> (f64, f64) {
    let (t0, t1) = (bt.c - bt.h, bt.c + bt.h);
    let mut cuts: Vec<f64> = vec![t0, t1];
    cuts.extend(kinks.iter().copied().filter(|&k| k > t0 && k < t1));
    cuts.sort_by(f64::total_cmp);
    let mut extra = Vec::new();
    for w in cuts.windows(2) {
        edge_crossings(sol, bx, w[0], w[1], &mut extra);
    }
    cuts.extend(extra);
    cuts.sort_by(f64::total_cmp);
    const PIECES: usize = 8;
    let (mut r1, mut r2) = (0.0, 0.0);
    for w in cuts.windows(2) {
        let len = (w[1] - w[0]) / PIECES as f64;
        for p in 0..PIECES {
            let a = w[0] + p as f64 * len;
            for &(node, weight) in rule {
                let t = a + 0.5 * len * (node + 1.0);
                let wt = 0.5 * len * weight;
                let (ft, dft) = (bt.value(t), bt.deriv(t));
                let sl = sol.slice(t);
                // background: sum over constant states of (w int B dx) B'(t) + (g int B' dx) B(t)
                let mut lo = f64::NEG_INFINITY;
                for (k, st) in sl.states.iter().enumerate() {
                    let hi = sl.deltas.get(k).map_or(f64::INFINITY, |d| d.x);
                    let (l, h) = (lo.max(bx.c - bx.h), hi.min(bx.c + bx.h));
                    if h > l {
                        let int_b = bx.primitive(h) - bx.primitive(l);
                        let int_db = bx.value(h) - bx.value(l);
                        let m = st.rho * st.u;
                        r1 += wt * (st.rho * int_b * dft + m * int_db * ft);
                        r2 += wt * (m * int_b * dft + m * st.u * int_db * ft);
                    }
                    lo = hi;
                }
                for d in &sl.deltas {
                    let (fx, dfx) = (bx.value(d.x), bx.deriv(d.x));
                    let mom = d.mass * d.velocity;
                    r1 += wt * (d.mass * fx * dft + mom * dfx * ft);
                    r2 += wt * (mom * fx * dft + mom * d.velocity * dfx * ft);
                }
            }
        }
    }
    (r1, r2)
}

/// Largest weak residual `(mass, momentum)` over 20 seeded test functions
/// supported in `box_.t_lo < t < box_.t_hi`, each centred near the
/// solution's central line with spatial half-width in
/// `[width / 2, 3 width / 2]`.
pub fn weak_residual_oracle(sol: &dyn WeakSolution, box_: WeakBox, width: f64, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rule = gauss_legendre(10);
    let kinks = sol.kinks();
    let span = box_.t_hi - box_.t_lo;
    let (mut m1, mut m2) = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let ht = span * rng.gen_range(0.1..0.5);
        let tc = rng.gen_range(box_.t_lo + ht..box_.t_hi - ht);
        let hx = width * rng.gen_range(0.5..1.5);
        let xc = sol.center(tc) + hx * rng.gen_range(-0.5..0.5);
        let (r1, r2) = residual_one(sol, Bump { c: xc, h: hx }, Bump { c: tc, h: ht }, &kinks, &rule);
        m1 = m1.max(r1.abs());
        m2 = m2.max(r2.abs());
    }
    (m1, m2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sdw::{build_interaction_ivp, integrate_sdw, solve_pgd_riemann};

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let rule = gauss_legendre(10);
        let s: f64 = rule.iter().map(|(x, w)| w * x.powi(18)).sum();
        assert!((s - 2.0 / 19.0).abs() < 1e-14);
        assert!((rule.iter().map(|r| r.1).sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn bump_primitive_matches_quadrature() {
        let b = Bump { c: 0.3, h: 0.7 };
        let rule = gauss_legendre(10);
        let (a, z) = (-0.1, 0.9);
        let q: f64 = rule.iter().map(|(x, w)| 0.5 * (z - a) * w * b.value(a + 0.5 * (z - a) * (x + 1.0))).sum();
        assert!((q - (b.primitive(z) - b.primitive(a))).abs() < 1e-13);
    }

    #[test]
    fn exact_delta_shock_passes_and_wrong_speed_fails() {
        let sol = solve_pgd_riemann(&State::new(1.0, 1.0), &State::new(1.2, 0.8)).unwrap();
        let bx = WeakBox { t_lo: 0.5, t_hi: 10.0 };
        let (a, b) = weak_residual_oracle(&sol, bx, 1.0, 11);
        assert!(a <= 1e-8 && b <= 1e-8, "{a} {b}");
        let PgdRiemannSolution::DeltaShock { left, right, speed, strength_rate } = sol else { unreachable!() };
        let bad = PgdRiemannSolution::DeltaShock { left, right, speed: speed + 0.01, strength_rate };
        let (a, b) = weak_residual_oracle(&bad, bx, 1.0, 11);
        assert!(a.max(b) > 1e-4, "{a} {b}");
    }

    #[test]
    fn vacuum_fan_and_trivial_have_zero_residual() {
        let fan = solve_pgd_riemann(&State::new(1.0, -1.0), &State::new(2.0, 1.0)).unwrap();
        let (a, b) = weak_residual_oracle(&fan, WeakBox { t_lo: 0.1, t_hi: 3.0 }, 2.0, 5);
        assert!(a < 1e-10 && b < 1e-10);
    }

    #[test]
    fn interaction_path_satisfies_weak_form() {
        let ivp =
            build_interaction_ivp(&State::new(1.0, 1.0), &State::new(1.2, 0.8), &State::new(1.3, 0.7), 0.0, 2.0).unwrap();
        let path = integrate_sdw(&ivp, 60.0, 1e-10).unwrap();
        let (a, b) = weak_residual_oracle(&path, WeakBox { t_lo: 5.0, t_hi: 60.0 }, 3.0, 2);
        assert!(a <= 1e-6 && b <= 1e-6, "{a} {b}");
    }
}
