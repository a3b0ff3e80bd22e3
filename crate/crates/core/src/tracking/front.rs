use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::{eigenvalues, from_invariants, solve_riemann, to_invariants, Family, GasParams, Invariants, State, Wave, WaveKind};

/// Time tolerance under which collisions count as simultaneous.
pub const TIME_TIE: f64 = 1e-12;

/// A travelling discontinuity. Positions are never stored: the front is
/// born at `(x0, t0)` and sits at `x0 + speed (t - t0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Front {
    pub id: u64,
    pub x0: f64,
    pub t0: f64,
    pub speed: f64,
    pub family: Family,
    pub kind: WaveKind,
    /// Signed invariant jump (`r` for family 1, `s` for family 2).
    pub amplitude: f64,
    pub left: State,
    pub right: State,
}

impl Front {
    pub fn x_at(&self, t: f64) -> f64 {
        self.x0 + self.speed * (t - self.t0)
    }

    pub fn strength(&self) -> f64 {
        self.amplitude.abs()
    }

    pub fn is_shock(&self) -> bool {
        self.kind == WaveKind::Shock
    }

    /// Short tag such as `S1` or `R2`.
    pub fn tag(&self) -> String {
        let k = if self.is_shock() { 'S' } else { 'R' };
        format!("{k}{}", self.family.index())
    }
}

/// Piecewise-constant initial data: `states[k]` lives between
/// `breakpoints[k - 1]` and `breakpoints[k]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseData {
    pub breakpoints: Vec<f64>,
    pub states: Vec<State>,
}

impl PiecewiseData {
    pub fn new(breakpoints: Vec<f64>, states: Vec<State>) -> Result<Self> {
        if states.len() != breakpoints.len() + 1 {
            return Err(Error::Domain(format!(
                "{} breakpoints need {} states, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                states.len()
            )));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) || breakpoints.iter().any(|b| !b.is_finite()) {
            return Err(Error::Domain("breakpoints must be finite and strictly increasing".into()));
        }
        for (k, s) in states.iter().enumerate() {
            if !(s.rho > 0.0) {
                return Err(Error::Vacuum(format!("initial state {k} has density {}", s.rho)));
            }
        }
        Ok(Self { breakpoints, states })
    }

    /// Three-state data `U0 | a1 | U1 | a2 | U2`.
    pub fn three_state(u0: State, u1: State, u2: State, a1: f64, a2: f64) -> Result<Self> {
        Self::new(vec![a1, a2], vec![u0, u1, u2])
    }
}

/// Fronts ordered by position at time `t`, between the far-field states.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrontList {
    pub t: f64,
    pub far_left: State,
    pub far_right: State,
    pub fronts: Vec<Front>,
    pub(crate) next_id: u64,
}

impl FrontList {
    pub fn len(&self) -> usize {
        self.fronts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fronts.is_empty()
    }

    pub fn positions(&self) -> Vec<f64> {
        self.fronts.iter().map(|f| f.x_at(self.t)).collect()
    }

    /// The constant states, left to right (`len() + 1` of them).
    pub fn states(&self) -> Vec<State> {
        let mut v = Vec::with_capacity(self.fronts.len() + 1);
        v.push(self.far_left);
        v.extend(self.fronts.iter().map(|f| f.right));
        v
    }

    /// Check ordering and piecewise-constant consistency.
    pub fn validate(&self) -> Result<()> {
        let mut prev = self.far_left;
        let mut last_x = f64::NEG_INFINITY;
        for f in &self.fronts {
            if f.left != prev {
                return Err(Error::Integrity(format!("front {} does not continue its neighbour's state", f.id)));
            }
            if f.left == f.right {
                return Err(Error::Integrity(format!("front {} has equal sides", f.id)));
            }
            let x = f.x_at(self.t);
            if x < last_x {
                return Err(Error::Integrity(format!("front {} out of order at t = {}", f.id, self.t)));
            }
            last_x = x;
            prev = f.right;
        }
        if prev != self.far_right {
            return Err(Error::Integrity("last front does not reach the far-right state".into()));
        }
        Ok(())
    }
}

/// Convert the waves of one exact Riemann solution into fronts born at
/// `(x, t)`; rarefactions become `ceil(amplitude / delta_r)` fragments of
/// equal invariant amplitude, each moving with the characteristic speed of
/// its right state.
pub(crate) fn waves_to_fronts(
    waves: &[Wave],
    x: f64,
    t: f64,
    p: &GasParams,
    delta_r: f64,
    mut next_id: impl FnMut() -> u64,
) -> Result<Vec<Front>> {
    let mut out = Vec::new();
    for w in waves {
        match w.kind {
            WaveKind::Shock => out.push(Front {
                id: next_id(),
                x0: x,
                t0: t,
                speed: w.speed_lo,
                family: w.family,
                kind: WaveKind::Shock,
                amplitude: w.amplitude,
                left: w.left,
                right: w.right,
            }),
            WaveKind::Rarefaction => {
                let n = (w.amplitude / delta_r).ceil().max(1.0) as usize;
                let il = to_invariants(&w.left, p)?;
                let ir = to_invariants(&w.right, p)?;
                let mut left = w.left;
                for k in 1..=n {
                    let frac = k as f64 / n as f64;
                    let right = if k == n {
                        w.right
                    } else {
                        let iv = match w.family {
                            Family::One => Invariants { r: il.r + frac * (ir.r - il.r), s: il.s },
                            Family::Two => Invariants { r: il.r, s: il.s + frac * (ir.s - il.s) },
                        };
                        from_invariants(&iv, p)?
                    };
                    let (l1, l2) = eigenvalues(&right, p)?;
                    let speed = if w.family == Family::One { l1 } else { l2 };
                    out.push(Front {
                        id: next_id(),
                        x0: x,
                        t0: t,
                        speed,
                        family: w.family,
                        kind: WaveKind::Rarefaction,
                        amplitude: w.amplitude / n as f64,
                        left,
                        right,
                    });
                    left = right;
                }
            }
        }
    }
    Ok(out)
}

/// Replace every breakpoint by the fronts of its exact Riemann solution.
pub fn discretize_initial(data: &PiecewiseData, p: &GasParams, delta_r: f64) -> Result<FrontList> {
    if !(delta_r > 0.0) {
        return Err(Error::Domain(format!("delta_r must be positive, got {delta_r}")));
    }
    let mut fl = FrontList {
        t: 0.0,
        far_left: data.states[0],
        far_right: *data.states.last().expect("at least one state"),
        fronts: Vec::new(),
        next_id: 0,
    };
    for (k, &x) in data.breakpoints.iter().enumerate() {
        let sol = solve_riemann(&data.states[k], &data.states[k + 1], p)?;
        let waves: Vec<Wave> = sol.waves().copied().collect();
        let mut id = fl.next_id;
        let fronts = waves_to_fronts(&waves, x, 0.0, p, delta_r, || {
            id += 1;
            id - 1
        })?;
        fl.next_id = id;
        fl.fronts.extend(fronts);
    }
    Ok(fl)
}

/// Collision of two or more adjacent fronts at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollisionEvent {
    pub t: f64,
    pub x: f64,
    /// Index range `first..=last` into the front list at the time of the
    /// event.
    pub first: usize,
    pub last: usize,
    pub ids: Vec<u64>,
}

/// Meeting time of the adjacent pair `(i, i + 1)`, if they converge.
pub(crate) fn pair_time(fl: &FrontList, i: usize) -> Option<f64> {
    let (a, b) = (&fl.fronts[i], &fl.fronts[i + 1]);
    let closing = a.speed - b.speed;
    if !(closing > 0.0) {
        return None;
    }
    let gap = (b.x_at(fl.t) - a.x_at(fl.t)).max(0.0);
    Some(fl.t + gap / closing)
}

/// Earliest collision among adjacent converging fronts.
///
/// Pairs meeting within [`TIME_TIE`] of the earliest time and sharing a
/// front are merged into one event; among simultaneous disjoint events the
/// leftmost wins.
pub fn next_collision(fl: &FrontList) -> Option<CollisionEvent> {
    let n = fl.fronts.len();
    if n < 2 {
        return None;
    }
    let times: Vec<Option<f64>> = (0..n - 1).map(|i| pair_time(fl, i)).collect();
    let t_min = times.iter().flatten().copied().fold(f64::INFINITY, f64::min);
    if !t_min.is_finite() {
        return None;
    }
    let hit = |i: usize| times[i].is_some_and(|t| t <= t_min + TIME_TIE);
    let first = (0..n - 1).find(|&i| hit(i))?;
    let mut last = first + 1;
    while last < n - 1 && hit(last) {
        last += 1;
    }
    let t = times[first..last].iter().flatten().copied().fold(f64::INFINITY, f64::min);
    let x = fl.fronts[first..=last].iter().map(|f| f.x_at(t)).sum::<f64>() / (last - first + 1) as f64;
    Some(CollisionEvent { t, x, first, last, ids: fl.fronts[first..=last].iter().map(|f| f.id).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shock(id: u64, x0: f64, speed: f64) -> Front {
        Front {
            id,
            x0,
            t0: 0.0,
            speed,
            family: Family::One,
            kind: WaveKind::Shock,
            amplitude: -0.1,
            left: State::new(1.0, id as f64),
            right: State::new(1.0, id as f64 + 1.0),
        }
    }

    fn list(fronts: Vec<Front>) -> FrontList {
        FrontList {
            t: 0.0,
            far_left: fronts[0].left,
            far_right: fronts.last().unwrap().right,
            next_id: fronts.len() as u64,
            fronts,
        }
    }

    #[test]
    fn linear_intersection() {
        let fl = list(vec![shock(0, 0.0, 0.89544), shock(1, 2.0, 0.75065)]);
        let ev = next_collision(&fl).unwrap();
        assert!((ev.t - 2.0 / 0.14479).abs() < 1e-9);
        assert!((ev.t - 13.81).abs() < 5e-3);
        assert_eq!(ev.ids, vec![0, 1]);
    }

    #[test]
    fn parallel_fronts_never_meet() {
        let fl = list(vec![shock(0, 0.0, 1.0), shock(1, 2.0, 1.0), shock(2, 3.0, 1.0)]);
        assert!(next_collision(&fl).is_none());
    }

    #[test]
    fn triple_point_is_one_event() {
        let fl = list(vec![shock(0, -1.0, 1.0), shock(1, 0.0, 0.0), shock(2, 1.0, -1.0), shock(3, 5.0, 0.0)]);
        let ev = next_collision(&fl).unwrap();
        assert_eq!(ev.ids, vec![0, 1, 2]);
        assert!((ev.t - 1.0).abs() < 1e-15 && ev.x.abs() < 1e-15);
    }

    #[test]
    fn leftmost_of_simultaneous_events_first() {
        let fl = list(vec![shock(0, 0.0, 1.0), shock(1, 2.0, -1.0), shock(2, 10.0, 1.0), shock(3, 12.0, -1.0)]);
        let ev = next_collision(&fl).unwrap();
        assert_eq!(ev.ids, vec![0, 1]);
    }

    #[test]
    fn equal_states_give_no_fronts() {
        let p = GasParams::new(0.1).unwrap();
        let s = State::new(1.0, 0.0);
        let fl = discretize_initial(&PiecewiseData::new(vec![0.0], vec![s, s]).unwrap(), &p, 0.05).unwrap();
        assert!(fl.is_empty());
    }

    #[test]
    fn first_example_gives_four_shocks() {
        let p = GasParams::new_inclusive(0.5).unwrap();
        let data =
            PiecewiseData::three_state(State::new(1.0, 1.0), State::new(1.2, 0.8), State::new(1.14286, 0.7), 0.0, 2.0)
                .unwrap();
        let fl = discretize_initial(&data, &p, 0.05).unwrap();
        let tags: Vec<String> = fl.fronts.iter().map(|f| f.tag()).collect();
        assert_eq!(tags, ["S1", "S2", "S1", "S2"]);
        assert_eq!(fl.positions(), vec![0.0, 0.0, 2.0, 2.0]);
        fl.validate().unwrap();
    }

    #[test]
    fn rarefaction_is_fragmented() {
        let p = GasParams::new(0.1).unwrap();
        let (l, r) = (State::new(1.0, 0.0), State::new(1.0, 1.0));
        let sol = solve_riemann(&l, &r, &p).unwrap();
        let total: f64 = sol.waves().map(|w| w.amplitude).sum();
        let fl = discretize_initial(&PiecewiseData::new(vec![0.0], vec![l, r]).unwrap(), &p, 0.05).unwrap();
        fl.validate().unwrap();
        assert!(fl.len() >= (total / 0.05).ceil() as usize);
        assert!(fl.fronts.iter().all(|f| f.kind == WaveKind::Rarefaction && f.amplitude <= 0.05 + 1e-15));
        // fans spread: speeds non-decreasing left to right
        assert!(fl.fronts.windows(2).all(|w| w[0].speed <= w[1].speed));
        for f in &fl.fronts {
            let (a, b) = (eigenvalues(&f.left, &p).unwrap(), eigenvalues(&f.right, &p).unwrap());
            let (lo, hi) = if f.family == Family::One { (a.0, b.0) } else { (a.1, b.1) };
            assert!(lo <= f.speed && f.speed <= hi);
        }
    }

    #[test]
    fn validate_catches_broken_lists() {
        let mut fl = list(vec![shock(0, 0.0, 1.0), shock(1, 2.0, 1.0)]);
        fl.validate().unwrap();
        fl.fronts[1].left = State::new(3.0, 3.0);
        assert!(fl.validate().is_err());
    }
}
